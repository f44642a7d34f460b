"""DSL front end: parsing, checking, normalization and printing."""

from __future__ import annotations

from . import ast
from .normalize import normalize
from .parser import DeclarationError, DslError, SyntaxErr, parse
from .printer import dump_ast, format_program


def load(source_text: str, filename: str = "<input>") -> ast.Program:
    """Parse and normalize in one step."""
    return normalize(parse(source_text, filename))


__all__ = [
    "ast", "parse", "normalize", "load", "format_program", "dump_ast",
    "DslError", "SyntaxErr", "DeclarationError",
]
