"""Core numerics: linear algebra, SWAP gate, normal form, Lie closure, documents."""
