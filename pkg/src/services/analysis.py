"""The analysis pipeline behind the CLI"""
import logging
from typing import Optional

from src.core.errors import InvariantBreach, SwapUnavailable
from src.models.cohomology import CoverProblem
from src.models.datum import HomogeneousSphericalDatum
from src.models.fan import ColoredFan
from src.models.galois import FiniteGroup, GaloisAction, Verdict
from src.models.report import AnalysisReport, Bundle, FanReport, OmegaSizes, SwapDemo
from src.services.automorphisms import AutomorphismService
from src.services.cohomology import CohomologyService
from src.services.fans import FanService
from src.services.galois import GaloisService
from src.services.spherical_data import SphericalDataService

logger = logging.getLogger(__name__)


class AnalysisPipeline:
    """Runs the services in order and assembles the reports printed by the CLI"""

    @staticmethod
    def default_action(d: HomogeneousSphericalDatum) -> GaloisAction:
        """Z/2 acting trivially: an inner form over a quadratic extension"""
        return GaloisAction.trivial(FiniteGroup.cyclic(2), d.ambient_rank, name="trivial action of Z/2")

    @staticmethod
    def compose_swap_demo(d: HomogeneousSphericalDatum, a: GaloisAction) -> SwapDemo:
        """
        a o m_gamma for the first non-identity generator gamma and the swap of
        the least point of Omega(2).
        m_gamma is the canonical lift of the action on Omega, and a is the color
        permutation of the surjectivity witness for that point's root.
        """
        if not GaloisService.preserves_invariants(d, a).preserved:
            raise SwapUnavailable("the *-action does not preserve the invariants")
        generator = next((g for g in a.group.generators if g != a.group.identity), None)
        if generator is None:
            raise SwapUnavailable("the group has no non-identity generator")
        a_set = SphericalDataService.set_A(d)
        if not a_set.roots:
            raise SwapUnavailable("Omega(2) is empty, there is no color pair to swap")

        zeta = {name: point.key for name, point in SphericalDataService.omega_decomposition(d).zeta.items()}
        s = {
            g: {p.key: q.key for p, q in GaloisService.omega_action(d, a, g).items()}
            for g in a.group.generators
        }
        m_gamma = CohomologyService.canonical_lift(CoverProblem(group=a.group, zeta=zeta, s=s))[generator]
        label = min(a_set.roots, key=lambda root: a_set.bijection[root].sort_key)
        swap = AutomorphismService.color_action(d, AutomorphismService.surjectivity_witness(d, label))
        composed = AutomorphismService.compose(m_gamma, swap)
        return SwapDemo(
            element=generator,
            swapped_root=label,
            m_gamma=m_gamma,
            a=swap,
            composed=composed,
            order=AutomorphismService.permutation_order(composed),
        )

    @staticmethod
    def analyze(
        bundle: Bundle,
        galois: Optional[GaloisAction] = None,
        oracle: bool = False,
        compose_swap: bool = False,
    ) -> AnalysisReport:
        """
        Full analysis of a datum under a *-action.
        An invalid datum stops after validation. Otherwise the report holds the
        Omega sizes, the Aut profile, the inner-form profile, the preservation
        flags, the orbits on Omega(2), the verdict with its rule, and the model
        count when a model exists.
        """
        d = bundle.datum
        a = galois or bundle.galois or AnalysisPipeline.default_action(d)
        validation = SphericalDataService.validate(d)
        if not validation.is_valid:
            logger.info(f"{d.name or '<datum>'} fails validation with {len(validation.violations)} violation(s)")
            return AnalysisReport(datum=d, galois=a, validation=validation)

        decomposition = SphericalDataService.omega_decomposition(d)
        preservation = GaloisService.preserves_invariants(d, a)
        inner_form = GaloisService.inner_form_profile(d, a)
        if inner_form.preservation_automatic and not preservation.preserved:
            raise InvariantBreach(f"preservation should hold ({inner_form.reason}) but fails on {preservation.failing}")
        verdict = GaloisService.existence_verdict(d, a)
        exists = verdict.verdict in (Verdict.EXISTS, Verdict.EXISTS_UNIQUE)
        report = AnalysisReport(
            datum=d,
            galois=a,
            validation=validation,
            omega=OmegaSizes(
                omega=len(decomposition.omega),
                omega1=len(decomposition.omega1),
                omega2=len(decomposition.omega2),
            ),
            aut=AutomorphismService.aut_profile(d),
            inner_form=inner_form,
            preservation=preservation,
            orbits=tuple(GaloisService.s_action_orbits(d, a)) if preservation.preserved else (),
            verdict=verdict,
            count=CohomologyService.count_models(d, a, oracle=oracle) if exists else None,
            swap_demo=AnalysisPipeline.compose_swap_demo(d, a) if compose_swap else None,
        )
        logger.info(f"✓ analysed {d.name or '<datum>'}: {verdict.verdict.value}")
        return report

    @staticmethod
    def check_fan(bundle: Bundle, fan: ColoredFan, galois: Optional[GaloisAction] = None) -> FanReport:
        d = bundle.datum
        a = galois or bundle.galois or AnalysisPipeline.default_action(d)
        preserved = GaloisService.preserves_invariants(d, a).preserved
        stability = FanService.is_gamma_stable(fan, d, a) if preserved else None
        return FanReport(fan=fan, stability=stability, embedding=FanService.embedding_verdict(fan, d, a))
