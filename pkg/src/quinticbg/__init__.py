"""Exact tilt-stability and Bogomolov-Gieseker bound tools for quintic surfaces and threefolds."""
from .characters import ReducedCharacter, quintic_surface, quintic_threefold
from .bounds import check_character, profile_by_name, star_shaped, toda_check
from .certify import certify_surface, certify_threefold, restriction_interval

__all__ = [
    "ReducedCharacter",
    "quintic_surface",
    "quintic_threefold",
    "check_character",
    "profile_by_name",
    "star_shaped",
    "toda_check",
    "certify_surface",
    "certify_threefold",
    "restriction_interval",
]
__version__ = "0.1.0"
