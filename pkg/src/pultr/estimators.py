"""scikit-learn style wrappers: a template is fitted once, then maps batches of digraphs.

``fit`` validates the template (and, for right adjoints, builds the subtree
decomposition); ``transform`` applies the functor to a list of digraphs.
``get_params``/``set_params``/``clone`` come from :class:`BaseEstimator`, so
these objects drop into a :class:`sklearn.pipeline.Pipeline`.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .adjoints import OMEGA_CONSTRUCTIONS, omega_for
from .decomposition import build_subtree_decomposition
from .digraph import Digraph, as_digraph
from .functors import gamma_apply, lambda_apply
from .hom import core
from .templates import PultrTemplate, load_template, validate_template

__all__ = [
    "check_digraphs",
    "check_template",
    "LeftPultrFunctor",
    "CentralPultrFunctor",
    "RightAdjoint",
    "CoreReducer",
]


def check_digraphs(X) -> list[Digraph]:
    """Coerce a single digraph or an iterable of digraph-like values to a list of Digraph."""
    if isinstance(X, (Digraph, str)):
        X = [X]
    try:
        items = list(X)
    except TypeError:
        raise TypeError(f"expected a digraph or an iterable of digraphs, got {type(X).__name__}") from None
    return [as_digraph(x) for x in items]


def check_template(template) -> PultrTemplate:
    """Accept a template, a fixture name or a ``.tpl`` path; raise if it is invalid."""
    if template is None:
        raise ValueError("a template is required")
    t = template if isinstance(template, PultrTemplate) else load_template(template)
    validate_template(t)
    return t


def _check_fitted(est, attr: str) -> None:
    if not hasattr(est, attr):
        raise NotFittedError(f"{type(est).__name__} is not fitted; call fit first")


class LeftPultrFunctor(TransformerMixin, BaseEstimator):
    """Glue copies of P and Q along each digraph."""

    def __init__(self, template=None):
        self.template = template

    def fit(self, X=None, y=None):
        self.template_ = check_template(self.template)
        self.report_ = validate_template(self.template_)
        return self

    def transform(self, X):
        _check_fitted(self, "template_")
        return [lambda_apply(self.template_, g) for g in check_digraphs(X)]


class CentralPultrFunctor(TransformerMixin, BaseEstimator):
    """Homomorphisms from P as vertices, arcs witnessed by Q."""

    def __init__(self, template=None):
        self.template = template

    def fit(self, X=None, y=None):
        self.template_ = check_template(self.template)
        self.report_ = validate_template(self.template_)
        return self

    def transform(self, X):
        _check_fitted(self, "template_")
        return [gamma_apply(self.template_, g) for g in check_digraphs(X)]


class RightAdjoint(TransformerMixin, BaseEstimator):
    """A right adjoint construction, returned factored or materialized.

    ``construction`` names an entry of :data:`pultr.adjoints.OMEGA_CONSTRUCTIONS`.
    ``middle`` only applies to ``"omega-tree"``.
    """

    def __init__(self, template=None, construction="omega-tree", middle=None,
                 materialize=False, max_candidates=4096):
        self.template = template
        self.construction = construction
        self.middle = middle
        self.materialize = materialize
        self.max_candidates = max_candidates

    def fit(self, X=None, y=None):
        if self.construction not in OMEGA_CONSTRUCTIONS:
            raise ValueError(f"unknown construction {self.construction!r}")
        self.template_ = check_template(self.template)
        self.decomposition_ = None
        if self.construction == "omega-tree":
            self.decomposition_ = build_subtree_decomposition(self.template_, self.middle)
        return self

    def transform(self, X):
        _check_fitted(self, "template_")
        kw = {"decomposition": self.decomposition_} if self.decomposition_ is not None else {}
        out = []
        for h in check_digraphs(X):
            f = omega_for(self.construction, self.template_, h, **kw)
            out.append(f.to_digraph(self.max_candidates)[0] if self.materialize else f)
        return out


class CoreReducer(TransformerMixin, BaseEstimator):
    """Replace each digraph by its core."""

    def __init__(self, max_vertices=64):
        self.max_vertices = max_vertices

    def fit(self, X=None, y=None):
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be positive")
        self.fitted_ = True
        return self

    def transform(self, X):
        _check_fitted(self, "fitted_")
        return [core(g, max_vertices=self.max_vertices) for g in check_digraphs(X)]
