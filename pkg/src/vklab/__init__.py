"""Van Kampen workbench for braid monodromy factorizations."""
