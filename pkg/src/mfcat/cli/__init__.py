"""Script language, executor and result emitters."""

from .emit import emit, emit_json, emit_text
from .execute import Executor, ResultRecord, RunOptions, execute
from .parser import Script, check_script, format_statement, parse_script, print_script

__all__ = [
    "Executor",
    "ResultRecord",
    "RunOptions",
    "Script",
    "check_script",
    "emit",
    "emit_json",
    "emit_text",
    "execute",
    "format_statement",
    "parse_script",
    "print_script",
]
