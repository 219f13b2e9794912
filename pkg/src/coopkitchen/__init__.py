"""coopkitchen: a real-time two-chef burger kitchen for human-AI teaming studies."""

__version__ = "0.1.0"
