"""Yang-Baxter maps with parameters on elliptic curves, over exact fields."""

__version__ = "0.1.0"
