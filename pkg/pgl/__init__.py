"""Growth quantities of finite groups, computed exactly and checked by brute force."""

__version__ = "0.1.0"
