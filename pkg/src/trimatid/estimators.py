"""scikit-learn style wrappers around the deciders and the language features."""

from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .decider import CounterEvidence, check_claim as decide
from .langtools import SimpleLanguage, enumerate_languages, language_member_scan
from .oracle import brute_force_check
from .validation import check_claims, check_n, check_positive, check_structure, check_words

_ORACLE_SPACE = {"tn-semiring": "triangular", "tn-semigroup": "triangular", "tn-ordered": "triangular", "un-semigroup": "unitriangular"}


class ClaimClassifier(ClassifierMixin, BaseEstimator):
    """Label claims True (holds) or False (fails) in a fixed structure.

    There is nothing to learn: ``fit`` only validates the parameters and
    records the label set.  ``method="oracle"`` answers by exhaustive
    substitution instead of the combinatorial criterion.
    """

    def __init__(self, n: int = 2, structure: str = "tn-semigroup", method: str = "decider", cap: int = 1 << 24):
        self.n = n
        self.structure = structure
        self.method = method
        self.cap = cap

    def _validate(self) -> None:
        check_n(self.n)
        check_structure(self.structure)
        check_positive(self.cap, "cap")
        if self.method not in ("decider", "oracle"):
            raise ValueError(f"method must be 'decider' or 'oracle', got {self.method!r}")

    def fit(self, X, y=None):
        self._validate()
        check_claims(X)
        self.classes_ = np.array([False, True])
        return self

    def _one(self, claim):
        if self.method == "decider":
            v = decide(claim, self.n, self.structure)
            return v.holds, v.witness
        # The unitriangular oracle runs one size up, matching U_{n+1}.
        n = self.n + 1 if self.structure == "un-semigroup" else self.n
        v = brute_force_check(claim, n, _ORACLE_SPACE[self.structure], self.cap)
        return v.holds, v.substitution

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "classes_")
        return np.array([self._one(c)[0] for c in check_claims(X)], dtype=bool)

    def explain(self, X) -> list[Optional[CounterEvidence]]:
        """Witness (decider) or falsifying substitution (oracle) per claim, None when it holds."""
        check_is_fitted(self, "classes_")
        return [self._one(c)[1] for c in check_claims(X)]


class SimpleLanguageFeaturizer(TransformerMixin, BaseEstimator):
    """Membership of words in every simple language with fewer than n markers.

    Features are 0/1 columns, one per language over the alphabet seen in
    ``fit``.  Then w <= w' holds in (T_n,.,<=) exactly when every column
    that is 1 for w is also 1 for w'.
    """

    def __init__(self, n: int = 2, include_empty_marker: bool = True, cap: int = 1 << 16):
        self.n = n
        self.include_empty_marker = include_empty_marker
        self.cap = cap

    def fit(self, X, y=None):
        check_n(self.n)
        check_positive(self.cap, "cap")
        words = check_words(X)
        sigma = sorted({x for w in words for x in w.letters})
        self.alphabet_ = tuple(sigma)
        self.languages_: list[SimpleLanguage] = list(
            enumerate_languages(sigma, self.n, self.include_empty_marker, self.cap)
        )
        self.n_features_out_ = len(self.languages_)
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "languages_")
        words = check_words(X)
        known = set(self.alphabet_)
        for w in words:
            extra = set(w.letters) - known
            if extra:
                raise ValueError(f"word {w} uses variables unseen in fit: {sorted(v.name for v in extra)}")
        out = np.zeros((len(words), len(self.languages_)), dtype=np.uint8)
        for i, w in enumerate(words):
            for j, lang in enumerate(self.languages_):
                out[i, j] = language_member_scan(w, lang)
        return out

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "languages_")
        return np.array([str(lang) for lang in self.languages_], dtype=object)
