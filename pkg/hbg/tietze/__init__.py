# HBG - certified Tietze moves and script replay
from hbg.tietze.moves import (
    AddGenerator,
    AddRelator,
    Certificate,
    Factor,
    RemoveGenerator,
    RemoveRelator,
    RenameGenerator,
    apply_move,
    evaluate_certificate,
    format_certificate,
    solve_for_generator,
)
from hbg.tietze.script import ReplayReport, Script, load_script, parse_script, replay_script

__all__ = [
    "AddGenerator",
    "AddRelator",
    "Certificate",
    "Factor",
    "RemoveGenerator",
    "RemoveRelator",
    "RenameGenerator",
    "ReplayReport",
    "Script",
    "apply_move",
    "evaluate_certificate",
    "format_certificate",
    "load_script",
    "parse_script",
    "replay_script",
    "solve_for_generator",
]
