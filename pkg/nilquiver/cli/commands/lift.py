import argparse

from nilquiver.cli.common import field_from_args, run_info
from nilquiver.models.schemas import ProjectiveLiftReport
from nilquiver.services.file_service import file_service
from nilquiver.services.richardson_service import richardson_service


def cmd_lift(args: argparse.Namespace) -> ProjectiveLiftReport:
    """Numbers for the lift of eP(i_t); the fibre formula is informational."""
    field = field_from_args(args)
    q = file_service.load_quiver(args.quiver)
    data = richardson_service.projective_lift_data(q, args.s, args.vertex, args.t, field)
    return ProjectiveLiftReport(
        run=run_info(args, field),
        index=f"{args.vertex}_{args.t}",
        dd=data.dd.text(),
        hom_eP=data.hom_eP,
        hom_P=data.hom_P,
        hom_difference=data.hom_eP - data.hom_P,
        euler_P=data.euler_P,
        euler_equals_hom=data.euler_P == data.hom_P,
        corner_iso=data.corner_iso,
        fibre_formula=data.fibre_formula,
    )


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "lift", parents=parents, help="data of the projective lift P(i_t)"
    )
    parser.add_argument("quiver", help="quiver JSON file")
    parser.add_argument("s", type=int)
    parser.add_argument("vertex")
    parser.add_argument("t", type=int)
    parser.set_defaults(handler=cmd_lift)
