"""Code construction, combinatorics and reporting services."""
