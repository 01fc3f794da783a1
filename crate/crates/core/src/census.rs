//! Galois-group census for degree-`p^2` extensions without intermediate
//! fields.
//!
//! Such extensions correspond to 2-dimensional irreducible submodules of
//! the Kummer module, which in turn come from character pairs
//! `(alpha, beta)` in `F_{p^2}^*`. Two routes are offered: the closed-form
//! row counts of [`census_k2`], and the orbit enumeration / classification
//! primitives ([`enumerate_dim2_orbits`], [`classify_pair`]) that the
//! oracles build on.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::finite_field::{FieldCtx, FqElem};
use crate::numtheory::{
    admissible_orders, ensure_prime, gcd, lambda_split, lcm, psi, rational_to_uint, uint, ExactRational,
    UnboundedInt,
};

/// The base field `K` through `p`, its ramification index and its residue
/// degree. Only `p`, `n = e_K f_K` and the parity of `f_K` affect the census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalFieldParams {
    p: u64,
    e_k: u32,
    f_k: u32,
}

impl LocalFieldParams {
    pub fn new(p: u64, e_k: u32, f_k: u32) -> Result<Self> {
        ensure_prime(p)?;
        if e_k == 0 || f_k == 0 {
            return Err(Error::InvalidArgument("e_K and f_K must be positive".into()));
        }
        if (e_k as u64) * (f_k as u64) > u32::MAX as u64 {
            return Err(Error::InvalidArgument("[K : Q_p] is too large".into()));
        }
        Ok(LocalFieldParams { p, e_k, f_k })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e_k(&self) -> u32 {
        self.e_k
    }

    pub fn f_k(&self) -> u32 {
        self.f_k
    }

    /// `[K : Q_p]`.
    pub fn n(&self) -> u64 {
        self.e_k as u64 * self.f_k as u64
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.f_k)
    }
}

/// Parity of the residue degree `f_K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(f_k: u32) -> Self {
        if f_k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Splitting {
    Split,
    NonSplit,
}

/// Isomorphism class of the Galois group of the normal closure, written
/// as `F_{p^2}^+ x| Q` for the quotient `Q` acting on the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupDescriptor {
    /// `Q = N_c`, the order-`c` subgroup of `F_{p^2}^*` acting by multiplication.
    Cyclic { c: u64 },
    /// `Q` non-abelian of order `2c` containing `N_c` with index 2.
    Metacyclic { c: u64, splitting: Splitting },
}

impl GroupDescriptor {
    pub fn c(&self) -> u64 {
        match *self {
            GroupDescriptor::Cyclic { c } | GroupDescriptor::Metacyclic { c, .. } => c,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GroupDescriptor::Cyclic { .. } => "cyclic",
            GroupDescriptor::Metacyclic { .. } => "metacyclic2",
        }
    }

    pub fn split(&self) -> Option<bool> {
        match self {
            GroupDescriptor::Cyclic { .. } => None,
            GroupDescriptor::Metacyclic { splitting, .. } => Some(*splitting == Splitting::Split),
        }
    }

    /// Order of the quotient acting on the plane.
    pub fn quotient_order(&self) -> u64 {
        match *self {
            GroupDescriptor::Cyclic { c } => c,
            GroupDescriptor::Metacyclic { c, .. } => 2 * c,
        }
    }

    /// Order of the full Galois group of the normal closure.
    pub fn order(&self, p: u64) -> u64 {
        self.quotient_order() * p * p
    }

    pub fn name(&self, p: u64) -> String {
        let plane = format!("F_{}⁺ ⋊", p * p);
        match *self {
            GroupDescriptor::Cyclic { c } => format!("{plane} C_{c} (order {})", self.order(p)),
            GroupDescriptor::Metacyclic { c, splitting } => {
                let tag = match splitting {
                    Splitting::Split => "split",
                    Splitting::NonSplit => "nonsplit",
                };
                format!("{plane} H_{c}^{tag} (order {})", self.order(p))
            }
        }
    }
}

/// How a dimension-2 pair acts: `s = 1` gives a cyclic image,
/// `s = 2` the induced (non-abelian) one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dim2Kind {
    Cyclic,
    Metacyclic,
}

impl Dim2Kind {
    pub fn s(&self) -> u64 {
        match self {
            Dim2Kind::Cyclic => 1,
            Dim2Kind::Metacyclic => 2,
        }
    }
}

/// A character pair `(alpha, beta) = (chi(tau), chi(v~))` in `F_{p^2}^*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharPair<'a> {
    pub alpha: FqElem<'a>,
    pub beta: FqElem<'a>,
    pub kind: Dim2Kind,
}

impl<'a> CharPair<'a> {
    /// Lexicographic key `(dlog alpha, dlog beta)`.
    pub fn key(&self) -> (u64, u64) {
        (self.alpha.dlog().expect("unit"), self.beta.dlog().expect("unit"))
    }

    /// The other member of the 2-element orbit.
    pub fn partner(&self, parity: Parity) -> CharPair<'a> {
        let (alpha, beta) = match (parity, self.kind) {
            (Parity::Even, _) => (self.alpha.frobenius(), self.beta.frobenius()),
            (Parity::Odd, Dim2Kind::Cyclic) => (self.alpha, self.beta.frobenius()),
            (Parity::Odd, Dim2Kind::Metacyclic) => (self.alpha.frobenius(), self.beta),
        };
        CharPair { alpha, beta, kind: self.kind }
    }
}

/// Decides whether `(alpha, beta)` gives a 2-dimensional irreducible over
/// `F_p` for the given parity of `f_K`, and which shape.
pub fn dim2_kind(alpha: FqElem<'_>, beta: FqElem<'_>, parity: Parity) -> Result<Dim2Kind> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::NotDimTwo(format!("({alpha}, {beta}) has a zero coordinate")));
    }
    let (a_rat, b_rat) = (alpha.in_prime_field(), beta.in_prime_field());
    match (parity, a_rat, b_rat) {
        (_, true, true) => Err(Error::NotDimTwo(format!("({alpha}, {beta}) lies in F_p^* x F_p^*"))),
        (Parity::Even, _, _) => Ok(Dim2Kind::Cyclic),
        (Parity::Odd, true, false) => Ok(Dim2Kind::Cyclic),
        (Parity::Odd, false, true) => Ok(Dim2Kind::Metacyclic),
        (Parity::Odd, false, false) => {
            Err(Error::NotDimTwo(format!("({alpha}, {beta}) has r = w = 2, dimension 4 for odd f_K")))
        }
    }
}

/// One representative per 2-element orbit of dimension-2 pairs, the
/// lexicographically least by `(dlog alpha, dlog beta)`, in increasing
/// order of that key.
pub fn enumerate_dim2_orbits(ctx: &FieldCtx, parity: Parity) -> Result<Vec<CharPair<'_>>> {
    check_quadratic(ctx)?;
    let n = ctx.unit_order();
    let mut reps = Vec::new();
    for i in 0..n {
        let alpha = ctx.gamma_pow(i);
        for j in 0..n {
            let beta = ctx.gamma_pow(j);
            let Ok(kind) = dim2_kind(alpha, beta, parity) else {
                continue;
            };
            let pair = CharPair { alpha, beta, kind };
            let other = pair.partner(parity);
            debug_assert!(other != pair);
            if pair.key() < other.key() {
                reps.push(pair);
            }
        }
    }
    Ok(reps)
}

pub(crate) fn check_quadratic(ctx: &FieldCtx) -> Result<()> {
    if ctx.degree() != 2 {
        return Err(Error::InvalidArgument("pairs live in F_{p^2}; got a prime field".into()));
    }
    Ok(())
}

/// Galois group of the normal closure for the extension class attached to
/// a dimension-2 pair.
pub fn classify_pair(alpha: FqElem<'_>, beta: FqElem<'_>, parity: Parity) -> Result<GroupDescriptor> {
    let ctx = alpha.ctx();
    check_quadratic(ctx)?;
    let kind = dim2_kind(alpha, beta, parity)?;
    let p = ctx.p();
    let n = ctx.unit_order();
    let descriptor = match kind {
        Dim2Kind::Cyclic => GroupDescriptor::Cyclic { c: lcm(alpha.order()?, beta.order()?) },
        Dim2Kind::Metacyclic => {
            let (la, lb) = (alpha.dlog()?, beta.dlog()?);
            // <alpha, beta> = <gamma_0^m>
            let m = gcd(gcd(la, lb), n);
            let c = n / m;
            let split = lb % gcd(m * (p + 1), n) == 0;
            let splitting = if split { Splitting::Split } else { Splitting::NonSplit };
            GroupDescriptor::Metacyclic { c, splitting }
        }
    };
    let c = descriptor.c();
    if n % c != 0 || (p - 1) % c == 0 {
        return Err(Error::Internal(format!("pair ({alpha}, {beta}) produced inadmissible c = {c}")));
    }
    Ok(descriptor)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub group: GroupDescriptor,
    pub count: UnboundedInt,
}

/// What the census actually depends on: `p`, `n = [K : Q_p]` and the
/// parity of `f_K`. Shapes with odd `n` and even parity are not realized by
/// any `K`, but the counting formulas are defined for them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CensusShape {
    pub p: u64,
    pub n: u64,
    pub parity: Parity,
}

impl CensusShape {
    pub fn new(p: u64, n: u64, parity: Parity) -> Result<Self> {
        ensure_prime(p)?;
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        Ok(CensusShape { p, n, parity })
    }
}

impl From<&LocalFieldParams> for CensusShape {
    fn from(k: &LocalFieldParams) -> Self {
        CensusShape { p: k.p(), n: k.n(), parity: k.parity() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    /// Sorted by `(kind, c, splitting)`.
    pub rows: Vec<CensusRow>,
    pub total_classes: UnboundedInt,
    pub total_extensions: UnboundedInt,
}

impl CensusTable {
    pub fn count_for(&self, group: &GroupDescriptor) -> Option<&UnboundedInt> {
        self.rows.iter().find(|r| &r.group == group).map(|r| &r.count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub params: LocalFieldParams,
    /// Sorted by `(kind, c, splitting)`.
    pub rows: Vec<CensusRow>,
    pub total_classes: UnboundedInt,
    pub total_extensions: UnboundedInt,
}

impl CensusReport {
    pub fn from_table(params: LocalFieldParams, table: CensusTable) -> Self {
        CensusReport {
            params,
            rows: table.rows,
            total_classes: table.total_classes,
            total_extensions: table.total_extensions,
        }
    }

    /// Each isomorphism class contains this many extensions.
    pub fn classes_per_extension_orbit(&self) -> u64 {
        self.params.p * self.params.p
    }

    pub fn count_for(&self, group: &GroupDescriptor) -> Option<&UnboundedInt> {
        self.rows.iter().find(|r| &r.group == group).map(|r| &r.count)
    }

    pub fn table(&self) -> CensusTable {
        CensusTable {
            rows: self.rows.clone(),
            total_classes: self.total_classes.clone(),
            total_extensions: self.total_extensions.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RowFilter {
    #[default]
    NonZero,
    All,
}

fn rat(n: &BigUint) -> ExactRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `K_K = p (p^2 + p - 2) (p^{2n} - 1) / (2 (p + 1))`.
pub fn total_classes_closed_form(p: u64, n: u64) -> Result<UnboundedInt> {
    let top = uint(p) * uint(p * p + p - 2) * (pow_2n(p, n)? - BigUint::one());
    rational_to_uint(&(rat(&top) / rat(&uint(2 * (p + 1)))), "total class count")
}

/// `p^3 (p^2 + p - 2) (p^{2n} - 1) / (2 (p + 1))`.
pub fn total_extensions_closed_form(p: u64, n: u64) -> Result<UnboundedInt> {
    let top = uint(p * p * p) * uint(p * p + p - 2) * (pow_2n(p, n)? - BigUint::one());
    rational_to_uint(&(rat(&top) / rat(&uint(2 * (p + 1)))), "total extension count")
}

fn pow_2n(p: u64, n: u64) -> Result<BigUint> {
    let exp = u32::try_from(2 * n).map_err(|_| Error::InvalidArgument(format!("n = {n} is too large")))?;
    Ok(uint(p).pow(exp))
}

/// Closed-form census for `K`; zero rows are dropped.
pub fn census_k2(k: &LocalFieldParams) -> Result<CensusReport> {
    census_k2_with(k, RowFilter::NonZero)
}

pub fn census_k2_with(k: &LocalFieldParams, filter: RowFilter) -> Result<CensusReport> {
    Ok(CensusReport::from_table(*k, census_table(&CensusShape::from(k), filter)?))
}

/// Row counts from the closed formulas:
///
/// * `N_c`: `(p^{2n} - 1) / (p^2 - 1) * psi(c, p^{(f_K, 2)} - 1) / 2`;
/// * split / non-split order-`2c` quotients (odd `f_K` only):
///   `lambda * (p^{2n} - 1) / (2 (p - 1)) * psi(c, p - 1)` and the
///   `1 - lambda` complement.
///
/// The row sum is checked against the closed-form total.
pub fn census_table(shape: &CensusShape, filter: RowFilter) -> Result<CensusTable> {
    let CensusShape { p, n, parity } = *shape;
    let big = rat(&(pow_2n(p, n)? - BigUint::one()));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let psi_modulus = match parity {
        Parity::Even => p * p - 1,
        Parity::Odd => p - 1,
    };

    let mut rows = Vec::new();
    for c in admissible_orders(p) {
        let cyclic = &big / rat(&uint(p * p - 1)) * &half * rat(&psi(c, psi_modulus)?);
        rows.push(CensusRow {
            group: GroupDescriptor::Cyclic { c },
            count: rational_to_uint(&cyclic, &format!("cyclic row c={c}"))?,
        });
        if parity == Parity::Odd {
            let lambda = lambda_split(c, p)?;
            let base = &big / rat(&uint(2 * (p - 1))) * rat(&psi(c, p - 1)?);
            let split = &lambda * &base;
            let non_split = (ExactRational::one() - &lambda) * &base;
            rows.push(CensusRow {
                group: GroupDescriptor::Metacyclic { c, splitting: Splitting::Split },
                count: rational_to_uint(&split, &format!("split row c={c}"))?,
            });
            rows.push(CensusRow {
                group: GroupDescriptor::Metacyclic { c, splitting: Splitting::NonSplit },
                count: rational_to_uint(&non_split, &format!("non-split row c={c}"))?,
            });
        }
    }
    let total_classes: UnboundedInt = rows.iter().map(|r| &r.count).sum();
    let closed = total_classes_closed_form(p, n)?;
    if total_classes != closed {
        return Err(Error::Internal(format!("row sum {total_classes} differs from closed form {closed}")));
    }
    let total_extensions = total_extensions_closed_form(p, n)?;
    if total_extensions != &total_classes * uint(p * p) {
        return Err(Error::Internal("extension total is not p^2 times the class total".into()));
    }
    if filter == RowFilter::NonZero {
        rows.retain(|r| r.count != BigUint::ZERO);
    }
    rows.sort_by_key(|r| r.group);
    Ok(CensusTable { rows, total_classes, total_extensions })
}
