import argparse
import logging
import sys
from typing import List, Optional

from pydantic import BaseModel

from nilquiver import __version__
from nilquiver.cli.commands import a2, analyze, components, lift, nsq, qh, richardson, sepquiver
from nilquiver.cli.common import common_parser
from nilquiver.core.config import settings
from nilquiver.core.exceptions import FiltrationCapExceeded, NilquiverError

logger = logging.getLogger("nilquiver")

COMMANDS = (nsq, richardson, analyze, components, a2, sepquiver, qh, lift)


def configure_logging(level: Optional[str] = None) -> None:
    """Status lines go to stderr so the JSON on stdout stays reproducible."""
    level = "DEBUG" if settings.DEBUG else (level or settings.LOG_LEVEL)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("nilquiver")
    root.handlers = [handler]
    root.setLevel(level.upper())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Nilpotent quiver algebras, recollements and Richardson orbits",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [common_parser()]
    for command in COMMANDS:
        command.register(subparsers, parents)
    return parser


def emit(report: BaseModel) -> None:
    sys.stdout.write(report.model_dump_json(indent=2) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse reports usage errors with status 2, the parse-error code
        return int(exc.code or 0)
    configure_logging(args.log_level)
    try:
        emit(args.handler(args))
    except FiltrationCapExceeded as exc:
        for partial in exc.partial:
            if isinstance(partial, BaseModel):
                emit(partial)
        logger.error("❌ %s", exc.detail)
        return exc.exit_code
    except NilquiverError as exc:
        logger.error("❌ %s", exc.detail)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
