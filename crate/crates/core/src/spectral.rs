//! Eigenvalue decisions: the two-sided `lambda*` gate, the PSD-at-2 shortcut,
//! `l0`, the limit test for path augmentations, and a certified bisection
//! interval for the smallest eigenvalue.
//!
//! `lambda_1(G) > -q` holds exactly when `A_G + qI` is positive definite, so
//! each decision is a Sylvester test at a rational shift.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{
    is_positive_semidefinite, rat, shift_det_sign, shift_is_positive_definite, shifted_adjacency,
    sparse_shift_is_positive_definite, sqrt_lower_bound, BorderedFactor, Rational,
};
use crate::rooted::{extend, Extension, RootedGraph};

/// `lambda* = rho^(1/2) + rho^(-1/2)` with `rho^3 = rho + 1`.
pub const LAMBDA_STAR: f64 = 2.0198008871;
/// `lambda' = gamma + 1/gamma` with `gamma^4 + gamma^3 = gamma^2 + 2`.
pub const LAMBDA_PRIME: f64 = 2.02124;

/// Rational thresholds used by the decision procedures.
#[derive(Debug)]
pub struct Constants {
    /// Lower rational bound on `lambda*`.
    pub lambda_star_lo: Rational,
    /// Upper rational bound on `lambda*`.
    pub lambda_star_hi: Rational,
    /// Shift standing in for 2 in strict positive definiteness tests.
    pub psd2_proxy: Rational,
    pub q_appendix: Rational,
    pub coef_appendix: Rational,
    pub q_forb: Rational,
}

pub fn constants() -> &'static Constants {
    static C: OnceLock<Constants> = OnceLock::new();
    C.get_or_init(|| Constants {
        lambda_star_lo: rat(18259, 9040),
        lambda_star_hi: rat(91499, 45301),
        psd2_proxy: rat(305, 152),
        q_appendix: rat(95, 47),
        coef_appendix: rat(6, 7),
        q_forb: rat(101, 50),
    })
}

/// Which side of `-lambda*` the smallest eigenvalue lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    /// `lambda_1(G) > -lambda*`.
    Above,
    /// `lambda_1(G) < -lambda*`.
    Below,
}

/// Decides the gate from scratch.
pub fn gate_lambda_star(g: &Graph) -> Result<Gate> {
    let c = constants();
    if shift_is_positive_definite(g, &c.lambda_star_lo) {
        Ok(Gate::Above)
    } else if !shift_is_positive_definite(g, &c.lambda_star_hi) {
        Ok(Gate::Below)
    } else {
        Err(Error::Undecidable)
    }
}

/// Gate for one-vertex extensions of a graph already known to lie above
/// `-lambda*`.
///
/// A parent with `A + lambda*_- I` positive definite leaves each child with at
/// most one eigenvalue below `-lambda*_-`, so the sign of one determinant
/// decides: positive at `lambda*_-` means above, negative at `lambda*_+` means
/// below. Both determinants come from cached adjugates of the parent.
pub struct GateParent {
    lo: BorderedFactor,
    hi: OnceLock<BorderedFactor>,
    psd2: OnceLock<Option<BorderedFactor>>,
    graph: Graph,
}

impl GateParent {
    /// `None` when `g` itself is not above `-lambda*_-`.
    pub fn new(g: &Graph) -> Option<Self> {
        let lo = BorderedFactor::new(g, &constants().lambda_star_lo)?;
        Some(GateParent { lo, hi: OnceLock::new(), psd2: OnceLock::new(), graph: g.clone() })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Gate of the child obtained by appending a vertex adjacent to `subset`.
    pub fn child(&self, subset: u64) -> Result<Gate> {
        if self.lo.child_det_sign(subset) == Ordering::Greater {
            return Ok(Gate::Above);
        }
        let hi = self.hi.get_or_init(|| {
            BorderedFactor::new(&self.graph, &constants().lambda_star_hi)
                .expect("positive definite at a larger shift")
        });
        if hi.child_det_sign(subset) == Ordering::Less {
            Ok(Gate::Below)
        } else {
            Err(Error::Undecidable)
        }
    }

    /// [`is_psd_at_two`] of the child joined to `subset`.
    pub fn child_is_psd_at_two(&self, subset: u64) -> bool {
        let f = self
            .psd2
            .get_or_init(|| BorderedFactor::new(&self.graph, &constants().psd2_proxy));
        match f {
            Some(f) => f.child_det_sign(subset) == Ordering::Greater,
            // a principal submatrix already fails
            None => false,
        }
    }
}

/// `lambda_1(G) >= -2`, decided by positive definiteness at `305/152`.
pub fn is_psd_at_two(g: &Graph) -> bool {
    shift_is_positive_definite(g, &constants().psd2_proxy)
}

/// Smallest `l` in `0..=6` with `APE(F, l)` leaving `G(2)`.
pub fn min_ell0(f: &RootedGraph) -> Result<usize> {
    for len in 0..=6 {
        let g = extend(f, &Extension::Augmented { len })?;
        if !is_psd_at_two(&g) {
            return Ok(len);
        }
    }
    Err(Error::Ell0NotFound)
}

/// Default refinement rounds for [`limit_below`]; the last one uses the
/// 4096-bit cap of [`sqrt_lower_bound`].
pub const DEFAULT_SQRT_ITERS: u32 = 9;

/// Whether `lim_{l -> oo} lambda_1((G_S, l)) < -q`, for `q > 2`.
///
/// The limit lies below `-q` exactly when `A_{(G_S,0)} + qI - c E_{v0,v0}` is
/// not positive semidefinite, where `c = q/2 - sqrt(q^2/4 - 1)` and `v_0` is
/// the vertex joined to the roots. `c` is irrational in general, so it is
/// bracketed by rationals from [`sqrt_lower_bound`]; the matrix shrinks as `c`
/// grows, and only a bracket that decides both ends is reported.
pub fn limit_below(f: &RootedGraph, q: &Rational) -> Result<bool> {
    limit_below_with(f, q, DEFAULT_SQRT_ITERS)
}

/// [`limit_below`] with the bracket refined for at most `iters` rounds; each
/// round doubles the bits of the square-root bound.
pub fn limit_below_with(f: &RootedGraph, q: &Rational, iters: u32) -> Result<bool> {
    let two = rat(2, 1);
    if q <= &two {
        return Err(Error::Matrix(format!("limit test needs q > 2, got {q}")));
    }
    let half = q / &two;
    let s = &half * &half - Rational::one();
    let g = extend(f, &Extension::Path { len: 0 })?;
    let v0 = g.order() - 1;
    let at = |c: &Rational| -> Result<bool> {
        Ok(is_positive_semidefinite(&shifted_adjacency(&g, q, Some((v0, c)))?))
    };
    for k in 0..=iters {
        let r = sqrt_lower_bound(&s, k)?;
        if r.is_zero() {
            continue;
        }
        let c_lo = &half - &s / &r;
        let c_hi = &half - &r;
        if !at(&c_lo)? {
            return Ok(true);
        }
        if at(&c_hi)? {
            return Ok(false);
        }
    }
    Err(Error::Inconclusive)
}

/// Dyadic bounds `lo < lambda_1(G) <= hi` with `hi - lo <= width`.
pub fn lambda1_bounds(g: &Graph, width: &Rational) -> (Rational, Rational) {
    if g.order() == 0 {
        return (Rational::zero(), Rational::zero());
    }
    // A + sI is not PD at s = 0 (trace zero) and PD at s = max degree + 1.
    let mut lo = Rational::zero();
    let mut hi = Rational::from_integer((g.max_degree() as i64 + 1).into());
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / rat(2, 1);
        if sparse_shift_is_positive_definite(g, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (-hi, -lo)
}

/// Interval of width at most `tol` containing `lambda_1(G)`.
pub fn lambda1_interval(g: &Graph, tol: f64) -> (f64, f64) {
    assert!(tol > 0.0, "tolerance must be positive");
    // largest power of two not above tol
    let k = (-tol.log2()).ceil().max(0.0) as usize;
    let width = Rational::new(1.into(), num_bigint::BigInt::one() << k);
    let (lo, hi) = lambda1_bounds(g, &width);
    (lo.to_f64().unwrap_or(f64::NAN), hi.to_f64().unwrap_or(f64::NAN))
}

/// Sign of `det(A_G + shift * I)`.
pub fn shifted_det_sign(g: &Graph, shift: &Rational) -> Ordering {
    shift_det_sign(g, shift)
}
