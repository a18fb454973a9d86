# Stover: finite pointed simplicial sets and recovery towers
