import argparse

from nilquiver.cli.common import field_from_args, run_info
from nilquiver.models.schemas import QHEntry, QHReport
from nilquiver.services.algebra_service import algebra_service
from nilquiver.services.file_service import file_service
from nilquiver.services.qh_service import qh_service


def cmd_qh(args: argparse.Namespace) -> QHReport:
    field = field_from_args(args)
    q = file_service.load_quiver(args.quiver)
    n = algebra_service.nilpotent_quiver_algebra(q, args.s)
    st = n.staircase

    def dims(M) -> str:
        return st.filtration_of(M.dims).text()

    rows = []
    for t in range(1, n.s + 1):
        for i in q.vertices:
            rows.append(
                QHEntry(
                    index=st.vertex(i, t),
                    projective=dims(qh_service.projective(n, i, t, field)),
                    injective=dims(qh_service.injective(n, i, t, field)),
                    standard=dims(qh_service.standard_module(n, i, t, field)),
                    costandard=dims(qh_service.costandard_module(n, i, t, field)),
                    tilting=dims(qh_service.tilting_module(n, i, t, field)),
                    res=qh_service.res_holds(n, i, t, field),
                    cores=qh_service.cores_holds(n, i, t, field),
                    filt=qh_service.filt_holds(n, i, t, field),
                )
            )
    return QHReport(run=run_info(args, field), s=n.s, rows=rows)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "qh", parents=parents, help="dimension vectors of P, I, Δ, ∇, T for every i_t"
    )
    parser.add_argument("quiver", help="quiver JSON file")
    parser.add_argument("s", type=int)
    parser.set_defaults(handler=cmd_qh)
