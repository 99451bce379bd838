"""Global j-crystal bases for type-B Hecke algebras and the coideal subalgebra U^j."""

__version__ = "0.1.0"
