# covariantes/__init__.py
"""Covariantes de formas binárias: colchetes, transferência Ψ, operadores
diferenciais em característica pequena e testes de pertinência graduados."""

__version__ = "0.1.0"
