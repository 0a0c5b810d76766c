"""Analytical LEO intermediaries with J2-J4 zonal harmonics."""
