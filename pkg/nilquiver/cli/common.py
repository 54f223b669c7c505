import argparse
from typing import Optional, Tuple

from nilquiver.core.config import settings
from nilquiver.core.exact_linalg import ExactField, make_field
from nilquiver.core.exceptions import ParseError
from nilquiver.models.quiver import DimFiltration, Quiver
from nilquiver.models.schemas import RunInfo
from nilquiver.services.file_service import file_service
from nilquiver.services.quiver_service import quiver_service


def common_parser() -> argparse.ArgumentParser:
    """Flags shared by every command; settings give the defaults."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--field", choices=["p", "Q"], default=settings.DEFAULT_FIELD,
                        help="sampling field: F_p or the rationals")
    parser.add_argument("--prime", type=int, default=settings.SAMPLING_PRIME)
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    parser.add_argument("--samples", type=int, default=settings.DEFAULT_SAMPLES)
    parser.add_argument("--workers", type=int, default=settings.WORKERS)
    return parser


def field_from_args(args: argparse.Namespace) -> ExactField:
    try:
        return make_field(args.field, args.prime, settings.RATIONAL_SAMPLE_BOUND)
    except ValueError as e:
        raise ParseError(f"--prime {args.prime}: {e}") from e


def run_info(args: argparse.Namespace, field: ExactField, sampled: bool = False) -> RunInfo:
    if sampled:
        return RunInfo(seed=args.seed, field=field.tag, samples=args.samples)
    return RunInfo(seed=args.seed, field=field.tag, samples=0)


def quiver_and_filtration(
    args: argparse.Namespace, text: str
) -> Tuple[Quiver, DimFiltration]:
    q = file_service.load_quiver(args.quiver)
    return q, quiver_service.parse_filtration(text, q, args.s)


def parse_vector(text: str, length: Optional[int] = None) -> Tuple[int, ...]:
    try:
        vec = tuple(int(x) for x in text.split(","))
    except ValueError as e:
        raise ParseError(f"cannot read dimension vector {text!r}") from e
    if length is not None and len(vec) != length:
        raise ParseError(f"dimension vector needs {length} entries, got {len(vec)}")
    return vec
