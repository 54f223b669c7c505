"""Sampling of flagged representations and the search for rigid Δ-filtered modules.

Every sample index k draws from its own stream ``SeedSequence(seed).spawn(n)[k]``,
so a run is reproducible from (seed, samples) and the process pool returns the
same verdict as the sequential loop.
"""

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from nilquiver.core.config import settings
from nilquiver.core.exact_linalg import ExactField, default_field
from nilquiver.core.exceptions import FiltrationCapExceeded, InvalidInput, TransferViolation
from nilquiver.models.module import Module, VertexMatrices
from nilquiver.models.quiver import DimFiltration, Quiver
from nilquiver.services.algebra_service import algebra_service
from nilquiver.services.qh_service import qh_service
from nilquiver.services.quiver_service import quiver_service
from nilquiver.services.recollement_service import RecollementContext, recollement_service
from nilquiver.services.repmod_service import repmod_service

logger = logging.getLogger(__name__)


class FlaggedSample(NamedTuple):
    dd: DimFiltration
    matrices: VertexMatrices  # M_a, d_j x d_i, in flag-adapted coordinates
    module: Module  # N(F, M) over N_s(Q)
    corner: Module  # (k^d, M_a) over kQ/J^s


class RigidFound(NamedTuple):
    witness: Module
    sample_index: int
    samples_tried: int
    seed: int

    verdict = "rigid-found"


class NoRigidAmongSamples(NamedTuple):
    min_ext1: int
    samples: int
    seed: int
    histogram: Dict[int, int]  # dim Ext^1 -> number of samples

    verdict = "no-rigid-among-samples"


RichardsonVerdict = Union[RigidFound, NoRigidAmongSamples]


class LiftReport(NamedTuple):
    mode: str
    dd: DimFiltration
    module: Module
    ext1_corner: int
    ext1_lift: int
    relaxed_property: bool


class Component(NamedTuple):
    dd: DimFiltration
    witness: Module
    dim: int


class ComponentScan(NamedTuple):
    components: List[Component]
    histogram: Dict[str, int]  # observed Dim c -> number of samples
    filtrations: int


class ProjectiveLiftData(NamedTuple):
    dd: DimFiltration
    hom_eP: int
    hom_P: int
    euler_P: int
    corner_iso: bool
    fibre_formula: int  # dim RF(dd) - dim rep_d, informational


def _sample_ext1(task: Tuple[Quiver, DimFiltration, ExactField, np.random.SeedSequence]) -> int:
    q, dd, field, stream = task
    sample = richardson_service.sample_flagged(q, dd, np.random.default_rng(stream), field)
    return repmod_service.ext_dim(sample.module, sample.module, 1)


class RichardsonService:
    def __init__(self, workers: int = settings.WORKERS):
        self.workers = workers

    @staticmethod
    def streams(seed: int, samples: int) -> List[np.random.SeedSequence]:
        return np.random.SeedSequence(seed).spawn(samples)

    # ------------------------------------------------------------------
    # flagged representations
    # ------------------------------------------------------------------

    def sample_flagged(
        self,
        q: Quiver,
        dd: DimFiltration,
        rng: np.random.Generator,
        field: Optional[ExactField] = None,
    ) -> FlaggedSample:
        """Random point of rep_dd for the standard coordinate flag, with N(F, M)."""
        dd.require_monotone()
        field = field or default_field()
        s = dd.s
        index = q.vertex_index
        top = dd.top

        def layer_of(i: int, c: int) -> int:
            return next(t for t in range(1, s + 1) if c < dd.value(i, t))

        mats: VertexMatrices = {}
        for a in q.arrows:
            i, j = index[a.source], index[a.target]
            m = field.zeros(top[j], top[i])
            for c in range(top[i]):
                rows = dd.value(j, layer_of(i, c) - 1)
                if rows:
                    m[:rows, c] = field.random(rng, (rows,))
            mats[a.name] = m

        n = algebra_service.nilpotent_quiver_algebra(q, s)
        st = n.staircase
        dims = st.dims_of(dd)
        actions: VertexMatrices = {}
        for t in range(1, s):
            for k, v in enumerate(q.vertices):
                actions[st.vertical(v, t)] = field.identity(dd.value(k, t + 1))[:, : dd.value(k, t)]
        for t in range(2, s + 1):
            for a in q.arrows:
                i, j = index[a.source], index[a.target]
                actions[st.diagonal(a.name, t)] = mats[a.name][: dd.value(j, t - 1), : dd.value(i, t)]
        module = repmod_service.make_module(n, dims, actions, field)
        corner = repmod_service.make_module(
            algebra_service.truncated_path_algebra(q, s),
            {v: top[k] for k, v in enumerate(q.vertices)},
            mats,
            field,
        )
        return FlaggedSample(dd, mats, module, corner)

    def richardson_search(
        self,
        q: Quiver,
        dd: DimFiltration,
        samples: int,
        seed: int,
        field: Optional[ExactField] = None,
        workers: Optional[int] = None,
    ) -> RichardsonVerdict:
        """First exactly rigid N(F, M) among the samples, or the observed Ext^1 minimum."""
        dd.require_monotone()
        if samples < 1:
            raise InvalidInput("samples must be positive")
        field = field or default_field()
        workers = self.workers if workers is None else workers
        streams = self.streams(seed, samples)
        histogram: Counter = Counter()
        found: Optional[int] = None
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for start in range(0, samples, workers):
                    batch = [(q, dd, field, st) for st in streams[start:start + workers]]
                    for offset, ext1 in enumerate(pool.map(_sample_ext1, batch)):
                        histogram[ext1] += 1
                        if ext1 == 0:
                            found = start + offset
                            break
                    if found is not None:
                        break
        else:
            for k, stream in enumerate(streams):
                ext1 = _sample_ext1((q, dd, field, stream))
                histogram[ext1] += 1
                logger.debug("🔍 sample %d: dim Ext^1 = %d", k, ext1)
                if ext1 == 0:
                    found = k
                    break
        if found is not None:
            witness = self.sample_flagged(q, dd, np.random.default_rng(streams[found]), field).module
            if not qh_service.is_delta_filtered(witness):
                raise TransferViolation("rigid witness is not Δ-filtered")
            logger.info("✅ rigid Δ-filtered module for %s at sample %d", dd.text(), found)
            return RigidFound(witness, found, found + 1, seed)
        logger.info("⚠️ no rigid module among %d samples for %s", samples, dd.text())
        return NoRigidAmongSamples(min(histogram), samples, seed, dict(sorted(histogram.items())))

    def revalidate_over_rationals(self, witness: Module) -> int:
        """dim Ext^1 of the witness re-read over Q with balanced representatives."""
        lifted = repmod_service.lift_to_rationals(witness)
        return repmod_service.ext_dim(lifted, lifted, 1)

    # ------------------------------------------------------------------
    # lifts through the recollement
    # ------------------------------------------------------------------

    def lift_rigid(self, ctx: RecollementContext, M: Module, mode: str = "c") -> LiftReport:
        """Dim c(M) or Dim r(M) with the lifted module and both Ext^1 dimensions."""
        if mode not in ("c", "r"):
            raise ValueError("mode must be 'c' or 'r'")
        lift = recollement_service.c_of(ctx, M) if mode == "c" else recollement_service.r_of(ctx, M)
        ext_corner = repmod_service.ext_dim(M, M, 1)
        ext_lift = repmod_service.ext_dim(lift, lift, 1)
        if mode == "c" and ext_lift > ext_corner:
            logger.warning(
                "⚠️ dim Ext^1(c(M), c(M)) = %d exceeds dim Ext^1(M, M) = %d", ext_lift, ext_corner
            )
        if ext_corner == 0 and ext_lift != 0:
            logger.error("❌ %s-lift of a rigid module has dim Ext^1 = %d", mode, ext_lift)
            raise TransferViolation(f"{mode}(M) is not rigid although M is")
        dd = recollement_service.dim_filtration(ctx, lift)
        return LiftReport(mode, dd, lift, ext_corner, ext_lift, True)

    # ------------------------------------------------------------------
    # generic Dim c and irreducible components
    # ------------------------------------------------------------------

    def dim_c(self, M: Module, s: int) -> DimFiltration:
        """Dim c(M) straight from the radical series: layer t has dims of J^{s-t} M."""
        layers = []
        for t in range(1, s + 1):
            spaces = repmod_service.radical_power(M, s - t)
            layers.append(tuple(spaces[v].shape[1] for v in M.algebra.vertices))
        return DimFiltration(layers=tuple(layers))

    def _observe(
        self, q: Quiver, dd: DimFiltration, samples: int, seed: int, field: ExactField
    ) -> List[Tuple[DimFiltration, Module]]:
        observed = []
        for stream in self.streams(seed, samples):
            sample = self.sample_flagged(q, dd, np.random.default_rng(stream), field)
            observed.append((self.dim_c(sample.corner, dd.s), sample.corner))
        return observed

    @staticmethod
    def _pointwise_max(values: Sequence[DimFiltration]) -> DimFiltration:
        return DimFiltration(
            layers=tuple(
                tuple(max(col) for col in zip(*rows)) for rows in zip(*(v.layers for v in values))
            )
        )

    def generic_dim_c(
        self,
        q: Quiver,
        dd: DimFiltration,
        samples: int,
        seed: int,
        field: Optional[ExactField] = None,
    ) -> DimFiltration:
        """Pointwise maximum of Dim c over sampled points of rep_dd."""
        dd.require_monotone()
        observed = self._observe(q, dd, samples, seed, field or default_field())
        return self._pointwise_max([value for value, _ in observed])

    def component_scan(
        self,
        q: Quiver,
        s: int,
        d: Sequence[int],
        samples_per_dd: int,
        seed: int,
        field: Optional[ExactField] = None,
        cap: Optional[int] = None,
    ) -> ComponentScan:
        """Maximal generic values of Dim c over all dd with top d, one component each."""
        field = field or default_field()
        histogram: Counter = Counter()
        generic: Dict[DimFiltration, Module] = {}
        count = 0
        truncated: Optional[FiltrationCapExceeded] = None
        try:
            for dd in quiver_service.filtrations_with_top(q, s, d, cap):
                count += 1
                observed = self._observe(q, dd, samples_per_dd, seed, field)
                histogram.update(v.text() for v, _ in observed)
                value = self._pointwise_max([v for v, _ in observed])
                witness = next((M for v, M in observed if v == value), None)
                if witness is None:
                    logger.warning("⚠️ no sample of %s attains Dim c = %s", dd.text(), value.text())
                    witness = max(observed, key=lambda pair: sum(map(sum, pair[0].layers)))[1]
                generic.setdefault(value, witness)
        except FiltrationCapExceeded as exc:
            truncated = exc
            logger.warning("⚠️ stopped after %d filtrations", count)
        n = algebra_service.nilpotent_quiver_algebra(q, s)
        top_square = sum(x * x for x in d)
        components = [
            Component(dd, witness, top_square - algebra_service.euler_form_nsq(n, dd, dd))
            for dd, witness in generic.items()
            if not any(other != dd and dd.leq(other) for other in generic)
        ]
        components.sort(key=lambda c: c.dd.layers)
        scan = ComponentScan(components, dict(sorted(histogram.items())), count)
        if truncated is not None:
            raise FiltrationCapExceeded(truncated.cap, partial=[scan])
        logger.info("✅ %d component(s) from %d filtrations", len(components), count)
        return scan

    def projective_lift_data(
        self, q: Quiver, s: int, i: str, t: int, field: Optional[ExactField] = None
    ) -> ProjectiveLiftData:
        """Numbers attached to the lift of eP(i_t) through π_dd with dd = Dim P(i_t)."""
        field = field or default_field()
        ctx = recollement_service.context(q, s)
        P = qh_service.projective(ctx.nsq, i, t, field)
        eP = recollement_service.restrict_e(ctx, P)
        dd = recollement_service.dim_filtration(ctx, P)
        small = repmod_service.projective_module(
            algebra_service.truncated_path_algebra(q, t), i, field
        )
        as_corner = repmod_service.make_module(ctx.corner, small.dims, small.matrices, field)
        rng = np.random.default_rng(self.streams(settings.DEFAULT_SEED, 1)[0])
        rep_d = sum(dd.top[q.vertex_index[a.source]] * dd.top[q.vertex_index[a.target]] for a in q.arrows)
        return ProjectiveLiftData(
            dd=dd,
            hom_eP=repmod_service.hom_dim(eP, eP),
            hom_P=repmod_service.hom_dim(P, P),
            euler_P=algebra_service.euler_form_nsq(ctx.nsq, dd, dd),
            corner_iso=repmod_service.iso_probe(eP, as_corner, rng),
            fibre_formula=quiver_service.dim_rf(q, dd) - rep_d,
        )


richardson_service = RichardsonService()
