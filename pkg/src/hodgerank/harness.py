"""Cross-validated tie-strength regression and bridge classification."""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp
from scipy.stats import norm

from .baselines import FeatureTable
from .structure import CLASSES, BridgeLabel

RIDGE_FALLBACK = 1e-6
Z95 = float(norm.ppf(0.975))


class InsufficientSupport(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentSpec:
    task: str = "tie-strength"  # or "bridge-class"
    features: tuple = ()
    folds: int = 5
    seed: int = 0
    balance: bool = True
    regularization: float = 1e-4
    tol: float = 1e-8
    max_iter: int = 2000

    def __post_init__(self):
        if self.task not in ("tie-strength", "bridge-class"):
            raise ValueError(f"unknown task {self.task!r}")
        if self.folds < 2:
            raise ValueError("folds must be >= 2")


@dataclass
class ExperimentResult:
    accuracies: list[float]
    coefficients: list[dict] = field(default_factory=list)
    predictions: np.ndarray | None = None
    feature_names: list[str] = field(default_factory=list)

    @property
    def mean(self) -> float:
        return float(np.mean(self.accuracies))

    @property
    def sd(self) -> float:
        """Sample standard deviation across folds."""
        return float(np.std(self.accuracies, ddof=1))

    def to_dict(self, spec: ExperimentSpec | None = None) -> dict:
        d = {
            "accuracies": [float(a) for a in self.accuracies],
            "mean": self.mean,
            "sd": self.sd,
            "features": list(self.feature_names),
            "coefficients": self.coefficients,
        }
        if spec is not None:
            d["spec"] = {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(spec).items()}
        return d

    def to_json(self, spec: ExperimentSpec | None = None) -> str:
        return json.dumps(self.to_dict(spec), indent=2, sort_keys=True)


def assign_folds(n: int, folds: int, seed: int, strata=None) -> np.ndarray:
    """Fold id per row; with ``strata`` each stratum is spread evenly over folds."""
    rng = np.random.default_rng(seed)
    out = np.empty(n, dtype=np.int64)
    groups = [np.arange(n)] if strata is None else [np.flatnonzero(strata == s) for s in np.unique(strata)]
    offset = 0
    for g in groups:
        perm = rng.permutation(g)
        out[perm] = (np.arange(len(perm)) + offset) % folds
        offset += len(perm)
    return out


def _standardize(train: np.ndarray, *others):
    mu = train.mean(axis=0)
    sd = train.std(axis=0)
    sd = np.where(sd > 0, sd, 1.0)
    return [(a - mu) / sd for a in (train, *others)], mu, sd


def _as_matrix(features) -> tuple[np.ndarray, list[str]]:
    if isinstance(features, FeatureTable):
        return features.matrix(), features.names
    X = np.asarray(features, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    return X, [f"x{i}" for i in range(X.shape[1])]


def _ols(X: np.ndarray, y: np.ndarray):
    """OLS with intercept; ridge fallback when the design is rank deficient."""
    n, p = X.shape
    D = np.column_stack([np.ones(n), X])
    G = D.T @ D
    ridge = np.linalg.matrix_rank(D) < p + 1
    if ridge:
        warnings.warn(f"rank-deficient design; using ridge with strength {RIDGE_FALLBACK:g}", RuntimeWarning, stacklevel=3)
        pen = np.full(p + 1, RIDGE_FALLBACK)
        pen[0] = 0.0
        G = G + np.diag(pen)
    beta = np.linalg.solve(G, D.T @ y)
    resid = y - D @ beta
    dof = max(n - p - 1, 1)
    sigma2 = float(resid @ resid) / dof
    se = np.sqrt(np.maximum(np.diag(sigma2 * np.linalg.pinv(G)), 0.0))
    return beta, se


def run_tie_strength(features, labels, spec: ExperimentSpec = ExperimentSpec()) -> ExperimentResult:
    """K-fold linear regression scored by ``1 - MSE`` on standardized targets.

    Features and targets are standardized with training-fold statistics.
    ``predictions`` holds out-of-fold predictions on the original label scale.
    """
    X, names = _as_matrix(features)
    y = np.asarray(labels, dtype=float)
    if len(y) != len(X):
        raise ValueError(f"{len(X)} feature rows but {len(y)} labels")
    fold = assign_folds(len(y), spec.folds, spec.seed)
    accs, coefs = [], []
    pred = np.empty(len(y))
    for k in range(spec.folds):
        tr, te = fold != k, fold == k
        (Xtr, Xte), _, _ = _standardize(X[tr], X[te])
        ymu, ysd = y[tr].mean(), y[tr].std()
        ysd = ysd if ysd > 0 else 1.0
        ytr, yte = (y[tr] - ymu) / ysd, (y[te] - ymu) / ysd
        beta, se = _ols(Xtr, ytr)
        yhat = beta[0] + Xte @ beta[1:]
        accs.append(float(1.0 - np.mean((yhat - yte) ** 2)))
        pred[te] = yhat * ysd + ymu
        coefs.append(
            {
                name: {"coef": float(b), "ci": [float(b - Z95 * s), float(b + Z95 * s)]}
                for name, b, s in zip(["intercept", *names], beta, se)
            }
        )
    return ExperimentResult(accs, coefs, pred, names)


def _softmax_fit(X: np.ndarray, y: np.ndarray, K: int, lam: float, tol: float, max_iter: int) -> np.ndarray:
    n, p = X.shape
    D = np.column_stack([np.ones(n), X])
    Y = np.zeros((n, K))
    Y[np.arange(n), y] = 1.0
    mask = np.ones((p + 1, K))
    mask[0] = 0.0  # intercept is not penalized

    def f(w):
        W = w.reshape(p + 1, K)
        Z = D @ W
        lse = logsumexp(Z, axis=1)
        loss = float(np.mean(lse - np.sum(Y * Z, axis=1))) + 0.5 * lam * float(np.sum((W * mask) ** 2))
        prob = np.exp(Z - lse[:, None])
        grad = D.T @ (prob - Y) / n + lam * W * mask
        return loss, grad.ravel()

    res = minimize(f, np.zeros((p + 1) * K), jac=True, method="L-BFGS-B", options={"maxiter": max_iter, "gtol": tol})
    return res.x.reshape(p + 1, K)


def _class_codes(labels) -> np.ndarray:
    if isinstance(labels, BridgeLabel):
        return labels.codes()
    arr = np.asarray(labels)
    if arr.dtype.kind in "OUS":
        lookup = {name: i for i, name in enumerate(CLASSES)}
        return np.array([lookup[s] for s in arr], dtype=np.int64)
    return arr.astype(np.int64)


def balanced_subsample(codes: np.ndarray, seed: int, min_count: int = 1) -> np.ndarray:
    """Row indices with every class downsampled to the minority-class size."""
    sizes = np.bincount(codes, minlength=len(CLASSES))
    if np.any(sizes < max(min_count, 1)):
        raise InsufficientSupport(f"insufficient class support: {dict(zip(CLASSES, sizes.tolist()))}")
    m = int(sizes.min())
    rng = np.random.default_rng(seed)
    keep = [np.sort(rng.choice(np.flatnonzero(codes == c), size=m, replace=False)) for c in range(len(sizes))]
    return np.sort(np.concatenate(keep))


def run_bridge_classification(features, labels, spec: ExperimentSpec = ExperimentSpec(task="bridge-class")) -> ExperimentResult:
    """K-fold multinomial logistic regression scored by 0/1 accuracy.

    Classes are downsampled to equal size (when ``spec.balance``) before a
    stratified fold assignment. ``predictions`` holds out-of-fold class codes
    for the retained rows and ``-1`` elsewhere.
    """
    X, names = _as_matrix(features)
    codes = _class_codes(labels)
    K = len(CLASSES)
    if spec.balance:
        rows = balanced_subsample(codes, spec.seed, min_count=spec.folds)
    else:
        counts = np.bincount(codes, minlength=K)
        if np.any(counts < spec.folds):
            raise InsufficientSupport(f"insufficient class support: {dict(zip(CLASSES, counts.tolist()))}")
        rows = np.arange(len(codes))
    Xs, ys = X[rows], codes[rows]
    fold = assign_folds(len(rows), spec.folds, spec.seed, strata=ys)
    accs, coefs = [], []
    pred = np.full(len(codes), -1, dtype=np.int64)
    for k in range(spec.folds):
        tr, te = fold != k, fold == k
        (Xtr, Xte), _, _ = _standardize(Xs[tr], Xs[te])
        W = _softmax_fit(Xtr, ys[tr], K, spec.regularization, spec.tol, spec.max_iter)
        yhat = np.argmax(W[0] + Xte @ W[1:], axis=1)
        accs.append(float(np.mean(yhat == ys[te])))
        pred[rows[te]] = yhat
        coefs.append({cls: [float(w) for w in W[:, j]] for j, cls in enumerate(CLASSES)})
    return ExperimentResult(accs, coefs, pred, names)


def component_regressions(features: FeatureTable, labels, components=("grad", "curl", "harm")) -> dict[str, dict]:
    """One univariate OLS per component on standardized feature and target.

    Each entry has ``coef``, ``ci`` (95%), ``sign`` and ``degenerate`` (set
    when the component has zero variance; its coefficient is then 0).
    """
    y = np.asarray(labels, dtype=float)
    ys = (y - y.mean()) / (y.std() if y.std() > 0 else 1.0)
    out = {}
    for name in components:
        x = features.columns[name]
        if not x.std() > 0:
            out[name] = {"coef": 0.0, "ci": [0.0, 0.0], "sign": 0, "degenerate": True}
            continue
        xs = (x - x.mean()) / x.std()
        beta, se = _ols(xs[:, None], ys)
        b, s = float(beta[1]), float(se[1])
        out[name] = {"coef": b, "ci": [b - Z95 * s, b + Z95 * s], "sign": int(np.sign(b)), "degenerate": False}
    return out


def tie_range_curve(predictions, truths, tie_ranges) -> list[dict]:
    """Mean predicted and true strength per tie range; infinite ranges sort last."""
    pred = np.asarray(predictions, dtype=float)
    true = np.asarray(truths, dtype=float)
    rng = np.asarray(tie_ranges, dtype=float)
    rows = []
    for r in sorted(set(rng.tolist()), key=lambda v: (math.isinf(v), v)):
        sel = rng == r
        if not sel.any():
            continue
        rows.append(
            {"tie_range": r, "count": int(sel.sum()), "mean_pred": float(pred[sel].mean()), "mean_true": float(true[sel].mean())}
        )
    return rows


def curve_to_csv(rows: list[dict]) -> str:
    lines = ["tie_range,count,mean_pred,mean_true"]
    for r in rows:
        tr = -1 if math.isinf(r["tie_range"]) else int(r["tie_range"])
        lines.append(f"{tr},{r['count']},{r['mean_pred']:.12g},{r['mean_true']:.12g}")
    return "\n".join(lines) + "\n"
