import argparse

from nilquiver.cli.common import field_from_args, run_info
from nilquiver.models.schemas import A2Report, SummandEntry
from nilquiver.services.a2_service import A2, a2_service
from nilquiver.services.quiver_service import quiver_service


def cmd_a2(args: argparse.Namespace) -> A2Report:
    field = field_from_args(args)
    dd = quiver_service.parse_filtration(args.dd, A2, args.s).require_monotone()
    result = a2_service.a2_rigid_module(args.s, dd, field)
    return A2Report(
        run=run_info(args, field),
        dd=dd.text(),
        x_hat=list(result.delta.x_hat),
        y_hat=list(result.delta.y_hat),
        summands=[SummandEntry(label=label, multiplicity=m) for label, m in result.summands],
        ext1=result.ext1,
        certificate=f"dim Ext^1(M, M) = {result.ext1} computed exactly over {field.tag}",
    )


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "a2", parents=parents, help="rigid Δ-filtered N_s(A_2)-module of a filtration"
    )
    parser.add_argument("s", type=int)
    parser.add_argument("dd", help='filtration over x -> y, e.g. "0,1;1,1"')
    parser.set_defaults(handler=cmd_a2)
