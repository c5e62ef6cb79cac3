"""Wiring of contexts, rewrite systems and rule sets from an engine config."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .calculus import Calculus, DerivativeRuleSet
from .config import EngineConfig
from .const import PLANE_INDETERMINATES
from .normal_form import RewriteSystem, plane_system
from .qgroup import quantum_matrix_system
from .scalars import ScalarContext


@dataclass
class Engine:
    """Everything needed to rewrite and differentiate over one scalar context."""

    config: EngineConfig = field(default_factory=EngineConfig)
    ctx: ScalarContext = field(default_factory=lambda: ScalarContext(PLANE_INDETERMINATES))

    @cached_property
    def plane(self) -> RewriteSystem:
        """Rewrite system of the exchange relations."""
        return plane_system(
            self.ctx,
            step_budget=self.config.step_budget,
            strategy=self.config.strategy,
            cache_size=self.config.cache_size,
        )

    @cached_property
    def rules(self) -> DerivativeRuleSet:
        """Derivative exchange rules."""
        return DerivativeRuleSet(self.ctx, self.config.series_reading)

    @cached_property
    def calculus(self) -> Calculus:
        """Derivatives and d over the plane system."""
        return Calculus(self.plane, self.rules, self.config.level_bound)

    @cached_property
    def qsystem(self) -> RewriteSystem:
        """Rewrite system of the quantum matrix entries."""
        return quantum_matrix_system(
            self.ctx, step_budget=self.config.step_budget, cache_size=self.config.cache_size
        )

    def clear_caches(self) -> None:
        """Forget the memoized rules and normal forms of both rewrite systems."""
        for name in ("plane", "qsystem"):
            if name in self.__dict__:
                self.__dict__[name].clear_cache()
