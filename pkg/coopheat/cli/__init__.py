"""
CLI module for coopheat
"""

from .app import create_parser, main

__all__ = ["create_parser", "main"]
