import argparse

from nilquiver.cli.common import field_from_args, quiver_and_filtration, run_info
from nilquiver.core.exact_linalg import PrimeField
from nilquiver.models.schemas import VerdictReport
from nilquiver.services.file_service import file_service
from nilquiver.services.richardson_service import RigidFound, richardson_service


def cmd_richardson(args: argparse.Namespace) -> VerdictReport:
    """Search rep_dd for a rigid Δ-filtered module; a hit certifies a Richardson orbit."""
    field = field_from_args(args)
    q, dd = quiver_and_filtration(args, args.dd)
    dd.require_monotone()
    verdict = richardson_service.richardson_search(
        q, dd, args.samples, args.seed, field, workers=args.workers
    )
    run = run_info(args, field, sampled=True)
    if isinstance(verdict, RigidFound):
        rational = None
        if isinstance(field, PrimeField):
            rational = richardson_service.revalidate_over_rationals(verdict.witness)
        return VerdictReport(
            run=run,
            dd=dd.text(),
            verdict="rigid-found",
            witness=file_service.module_to_file(verdict.witness),
            sample_index=verdict.sample_index,
            rational_ext1=rational,
        )
    return VerdictReport(
        run=run,
        dd=dd.text(),
        verdict="no-rigid-among-samples",
        min_ext1=verdict.min_ext1,
        histogram={str(k): v for k, v in verdict.histogram.items()},
    )


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "richardson", parents=parents, help="decide the Richardson property for (Q, dd) by sampling"
    )
    parser.add_argument("quiver", help="quiver JSON file")
    parser.add_argument("s", type=int)
    parser.add_argument("dd", help='dimension filtration such as "0,1;1,1"')
    parser.set_defaults(handler=cmd_richardson)
