"""Analyses built on the core: classification, dynamics, sampling."""
