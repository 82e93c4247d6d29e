"""The pvkit command-line interface and its DSL."""

from .main import main, run_text
from .parser import parse_program
from .session import Report, Session, canonical_json

__all__ = ["Report", "Session", "canonical_json", "main", "parse_program", "run_text"]
