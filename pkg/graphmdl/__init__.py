"""MDL-guided substructure discovery over labeled graphs."""

__version__ = "0.1.0"
