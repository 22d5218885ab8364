"""Textual format for finite sites, presheaves, distributors and transformations."""
from .loader import Workspace, load, load_document, load_path
from .nodes import Document
from .parser import parse
from .printer import print_document

__all__ = ["Document", "Workspace", "load", "load_document", "load_path", "parse", "print_document"]
