"""Alpha-Beta family search engines with minimal tree and minimal graph metrology."""

__version__ = "0.1.0"
