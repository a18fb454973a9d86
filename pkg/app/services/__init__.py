# Simplicial sets, mapping spaces, comonads and towers
