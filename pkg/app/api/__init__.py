# Command handlers, catalog parsing and report models
