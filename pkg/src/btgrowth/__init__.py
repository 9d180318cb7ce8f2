"""Free-semigroup witnesses and word growth for subgroups of GL_2 acting on
Bruhat-Tits trees."""

__version__ = "0.1.0"
