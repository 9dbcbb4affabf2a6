"""Estimator parameter handling compatible with the scikit-learn protocol."""

from __future__ import annotations

import inspect


class BaseEstimator:
    """Provides get_params/set_params from the ``__init__`` signature.

    Subclasses must store every constructor argument on ``self`` under the
    same name and do no other work in ``__init__``; fitted state uses
    trailing-underscore attributes. This keeps the estimators duck-compatible
    with scikit-learn pipelines and grid search without depending on sklearn.
    """

    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        return sorted(
            name
            for name, p in sig.parameters.items()
            if name != "self"
            and p.kind not in (p.VAR_POSITIONAL, p.VAR_KEYWORD)
        )

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {sorted(valid)}"
                )
            setattr(self, name, value)
        return self

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"
