import argparse
import logging

from nilquiver.cli.common import field_from_args, run_info
from nilquiver.models.algebra import NilpotentQuiverAlgebra
from nilquiver.models.schemas import AnalyzeReport, FibreReport
from nilquiver.services.file_service import file_service
from nilquiver.services.quiver_service import quiver_service
from nilquiver.services.recollement_service import recollement_service
from nilquiver.services.richardson_service import richardson_service

logger = logging.getLogger(__name__)


def cmd_analyze(args: argparse.Namespace) -> AnalyzeReport:
    """Dim c, Dim r, rigidity of M and of both lifts, and optionally the fibre over M."""
    M = file_service.load_module(args.module)
    algebra = M.algebra
    if isinstance(algebra, NilpotentQuiverAlgebra):
        ctx = recollement_service.context(algebra.base, algebra.s)
        logger.info("🔍 analysing e·N of the given N_%d(Q)-module", algebra.s)
        M = recollement_service.restrict_e(ctx, M)
    else:
        ctx = recollement_service.context(algebra.quiver, algebra.s)
    c_lift = richardson_service.lift_rigid(ctx, M, "c")
    r_lift = richardson_service.lift_rigid(ctx, M, "r")
    rank, end_qr = recollement_service.psi_rank(ctx, M)
    fibre = None
    if args.dd:
        dd = quiver_service.parse_filtration(args.dd, ctx.base, ctx.s).require_monotone()
        data = recollement_service.fibre_data(ctx, M, dd)
        check = recollement_service.desingularisation_check(ctx, M, dd)
        fibre = FibreReport(
            dd=dd.text(),
            grassmannian_dims=data.grassmannian_dims.text(),
            nonempty_possible=data.nonempty_possible,
            qr_dims={v: d for v, d in data.qr.dims.items() if d},
            end_equals_euler=check.end_equals_euler,
        )
    return AnalyzeReport(
        run=run_info(args, M.field),
        dims=dict(M.dims),
        dim_c=c_lift.dd.text(),
        dim_r=r_lift.dd.text(),
        ext1_corner=c_lift.ext1_corner,
        ext1_c=c_lift.ext1_lift,
        ext1_r=r_lift.ext1_lift,
        rigid_corner=c_lift.ext1_corner == 0,
        rigid_c=c_lift.ext1_lift == 0,
        rigid_r=r_lift.ext1_lift == 0,
        relaxed_property=c_lift.relaxed_property and r_lift.relaxed_property,
        psi_rank=rank,
        end_qr=end_qr,
        fibre=fibre,
    )


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "analyze", parents=parents, help="recollement data and rigidity of a kQ/J^s-module"
    )
    parser.add_argument("module", help="module JSON file")
    parser.add_argument("--dd", default=None, help="dimension filtration for the fibre data")
    parser.set_defaults(handler=cmd_analyze)
