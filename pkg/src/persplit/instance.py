"""The engine's central input value: a graded rational space with an
increasing filtration and a degree-2 operator, plus optional Hodge
bigrading and intersection pairing."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import InputError
from .graded import (Filtration, GradedMap, GradedSpace, graded_pieces,
                     validate_filtration)


@dataclass(frozen=True)
class PerverseLefschetzInstance:
    center: int
    space: GradedSpace
    filtration: Filtration
    eta: GradedMap
    hodge: "object | None" = None      # hodge.HodgeBigrading
    pairing: "object | None" = None    # duality.IntersectionPairing
    groups: "dict | None" = None       # name -> tuple of degree-0 GradedMaps

    def __post_init__(self):
        if self.eta.shift != 2:
            raise InputError(f"operator has degree {self.eta.shift}, expected 2")
        if self.filtration.space != self.space:
            raise InputError("filtration is not over the instance's graded space")

    @cached_property
    def filtration_report(self):
        return validate_filtration(self.space, self.filtration)

    @property
    def amplitude(self):
        return self.filtration_report.amplitude

    @cached_property
    def pieces(self):
        return graded_pieces(self.space, self.filtration, self.eta)

    def label(self, d, j):
        labels = self.space.labels.get(d)
        return labels[j] if labels else f"e{d}_{j}"

    def format_vector(self, d, vector, reverse=False):
        """Human-readable combination of the degree-d basis labels;
        ``reverse`` lists the highest-index coordinates first."""
        terms = []
        entries = list(enumerate(vector))
        if reverse:
            entries.reverse()
        for j, c in entries:
            if not c:
                continue
            name = self.label(d, j)
            if c == 1:
                terms.append(f"+ {name}" if terms else name)
            elif c == -1:
                terms.append(f"- {name}" if terms else f"-{name}")
            else:
                cstr = str(c)
                if terms and not cstr.startswith("-"):
                    terms.append(f"+ {cstr} {name}")
                elif terms:
                    terms.append(f"- {cstr[1:]} {name}")
                else:
                    terms.append(f"{cstr} {name}")
        return " ".join(terms) if terms else "0"
