"""Render dickeprobe benchmark CSV data into figure images.

The package consumes only the public data contract of the producer: rows
CSV files carrying the ``dickeprobe-rows-v1`` schema column, plus JSON
figure recipes.  It never recomputes numerical content; everything drawn
comes from the CSV cells.
"""

__version__ = "0.1.0"
