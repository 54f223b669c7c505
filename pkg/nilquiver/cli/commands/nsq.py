import argparse

from nilquiver.cli.common import field_from_args, run_info
from nilquiver.models.schemas import NsqReport, QuiverFile
from nilquiver.services.algebra_service import algebra_service
from nilquiver.services.file_service import file_service


def cmd_nsq(args: argparse.Namespace) -> NsqReport:
    """Presentation of N_s(Q): staircase quiver, relations and standard basis."""
    q = file_service.load_quiver(args.quiver)
    n = algebra_service.nilpotent_quiver_algebra(q, args.s)
    return NsqReport(
        run=run_info(args, field_from_args(args)),
        s=args.s,
        staircase=QuiverFile.from_quiver(n.quiver),
        relations=[
            f"{r.name}: " + " ".join(f"{c:+d}·{'·'.join(reversed(w))}" for c, w in r.terms)
            for r in n.relations
        ],
        dim=n.dim,
        basis=[b.label for b in n.basis],
        semisimple=n.s == 1 or not q.arrows,
        auslander_algebra=algebra_service.is_auslander_case(q, args.s),
    )


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("nsq", parents=parents, help="print the presentation of N_s(Q)")
    parser.add_argument("quiver", help="quiver JSON file")
    parser.add_argument("s", type=int)
    parser.set_defaults(handler=cmd_nsq)
