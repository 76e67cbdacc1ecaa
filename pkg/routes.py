from typing import Any, Dict

from controllers.lab_controller import CommandResult, LabController
from services.config import SearchSettings

COMMANDS = (
    "extend",
    "statements",
    "nu",
    "lift",
    "classify",
    "companion",
    "pell",
    "witness",
    "chain",
    "verify-paper",
)


def handle_command(subcommand: str, options: Dict[str, Any], settings: SearchSettings) -> CommandResult:
    if subcommand not in COMMANDS:
        raise ValueError(f"unknown subcommand {subcommand!r}")

    controller = LabController(settings)
    method = getattr(controller, subcommand.replace("-", "_"))
    return method(**options)
