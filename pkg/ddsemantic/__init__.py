# Semantic information toolkit for drug-delivery-system parameter optimisation
__version__ = "0.1.0"
