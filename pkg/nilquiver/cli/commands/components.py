import argparse

from nilquiver.cli.common import field_from_args, parse_vector, run_info
from nilquiver.core.exceptions import FiltrationCapExceeded
from nilquiver.models.schemas import ComponentEntry, ComponentsReport
from nilquiver.services.file_service import file_service
from nilquiver.services.richardson_service import ComponentScan, richardson_service


def _report(args, field, d, scan: ComponentScan, truncated: bool) -> ComponentsReport:
    return ComponentsReport(
        run=run_info(args, field, sampled=True),
        d=list(d),
        s=args.s,
        components=[
            ComponentEntry(dd=c.dd.text(), dim=c.dim, witness=file_service.module_to_file(c.witness))
            for c in scan.components
        ],
        histogram=scan.histogram,
        filtrations=scan.filtrations,
        truncated=truncated,
    )


def cmd_components(args: argparse.Namespace) -> ComponentsReport:
    """Irreducible components of rep_d(kQ/J^s) as maximal generic values of Dim c."""
    field = field_from_args(args)
    q = file_service.load_quiver(args.quiver)
    d = parse_vector(args.d, len(q.vertices))
    try:
        scan = richardson_service.component_scan(
            q, args.s, d, args.samples, args.seed, field, cap=args.cap
        )
    except FiltrationCapExceeded as exc:
        partial = [_report(args, field, d, p, True) for p in exc.partial]
        raise FiltrationCapExceeded(exc.cap, partial=partial) from exc
    return _report(args, field, d, scan, False)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "components", parents=parents, help="irreducible components of rep_d(kQ/J^s)"
    )
    parser.add_argument("quiver", help="quiver JSON file")
    parser.add_argument("s", type=int)
    parser.add_argument("d", help='dimension vector such as "1,1"')
    parser.add_argument("--cap", type=int, default=None, help="maximum number of filtrations")
    parser.set_defaults(handler=cmd_components)
