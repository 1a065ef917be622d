"""Beyond-planarity parameters of graph drawings and certified constructions."""

__version__ = "0.1.0"
