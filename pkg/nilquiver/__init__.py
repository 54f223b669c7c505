# Nilpotent quiver algebras, recollements and quiver-graded Richardson orbits
__version__ = "0.1.0"
