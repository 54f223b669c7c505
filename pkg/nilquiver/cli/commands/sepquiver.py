import argparse

from nilquiver.cli.common import field_from_args, run_info
from nilquiver.models.schemas import QuiverFile, SepQuiverReport
from nilquiver.services.file_service import file_service
from nilquiver.services.quiver_service import quiver_service


def cmd_sepquiver(args: argparse.Namespace) -> SepQuiverReport:
    """Separation quiver and the Dynkin test deciding representation-finiteness of kQ/J²."""
    q = file_service.load_quiver(args.quiver)
    sep = quiver_service.separation_quiver(q)
    types = quiver_service.is_dynkin(sep)
    obstruction = quiver_service.dynkin_obstruction(sep)
    if types is None:
        verdict = f"not Dynkin ({obstruction}); not representation-finite by this criterion"
    else:
        verdict = f"{', '.join(types)}; kQ/J² representation-finite"
    return SepQuiverReport(
        run=run_info(args, field_from_args(args)),
        separation_quiver=QuiverFile.from_quiver(sep),
        dynkin_types=types,
        obstruction=obstruction,
        representation_finite=types is not None,
        verdict=verdict,
    )


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "sepquiver", parents=parents, help="separation quiver and rep-finiteness of kQ/J²"
    )
    parser.add_argument("quiver", help="quiver JSON file")
    parser.set_defaults(handler=cmd_sepquiver)
