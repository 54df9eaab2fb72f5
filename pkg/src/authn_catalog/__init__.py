"""Faceted classification engine and catalog toolkit for authenticators
and authenticator-centric authentication techniques."""

__version__ = "0.1.0"
