//! Brute-force recomputation of every counted quantity.
//!
//! Nothing here calls the closed forms it is meant to check: orders are
//! found by repeated multiplication, subgroups by closure, and group
//! identification by abstract isomorphism against reference groups built
//! from `(c, splitting)` alone. The only shared code is field and matrix
//! arithmetic plus [`submodule_count`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::census::{
    census_table, classify_pair, enumerate_dim2_orbits, CensusReport, CensusRow, CensusShape, CensusTable,
    GroupDescriptor, LocalFieldParams, Parity, RowFilter, Splitting,
};
use crate::error::{Error, Result};
use crate::finite_field::{FieldCtx, FqElem};
use crate::matrix_groups::{closure, is_isomorphic, make_t, make_u, multiplication_matrix, Mat2, MatrixGroup};
use crate::numtheory::{ensure_prime, lambda_split, psi, ExactRational, UnboundedInt};
use crate::par::Exec;
use crate::rep_theory::submodule_count;

/// Largest prime the group and census oracles accept.
pub const MAX_GROUP_PRIME: u64 = 7;
/// Largest prime the lambda oracle accepts.
pub const MAX_LAMBDA_PRIME: u64 = 13;

/// Counts `(x, y)` in `Z/a x Z/b` of order exactly `a`.
pub fn oracle_psi(a: u64, b: u64) -> UnboundedInt {
    let orders = |m: u64| -> Vec<u64> {
        (0..m)
            .map(|x| {
                let mut acc = x;
                let mut k = 1;
                while acc != 0 {
                    acc = (acc + x) % m;
                    k += 1;
                }
                k
            })
            .collect()
    };
    let (oa, ob) = (orders(a), orders(b));
    let mut count = 0u64;
    for &x in &oa {
        for &y in &ob {
            // lcm by search: the least multiple of x that y divides
            let mut l = x;
            while l % y != 0 {
                l += x;
            }
            if l == a {
                count += 1;
            }
        }
    }
    BigUint::from(count)
}

fn mult_order_by_powers(x: FqElem<'_>) -> u64 {
    let mut acc = x;
    let mut k = 1;
    while !acc.is_one() {
        acc = acc * x;
        k += 1;
    }
    k
}

/// The multiplicative subgroup generated by `gens`, as a sorted list.
fn field_subgroup<'a>(one: FqElem<'a>, gens: &[FqElem<'a>]) -> Vec<FqElem<'a>> {
    let mut seen = HashSet::from([one]);
    let mut queue = vec![one];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in gens {
            let y = x * g;
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    queue.sort();
    queue
}

/// Per order `c`: (pairs with `beta` in `<gamma^{p+1}>`, all pairs) over
/// `F_{p^2}^* x F_p^*`.
fn lambda_tally(p: u64) -> Result<BTreeMap<u64, (u64, u64)>> {
    ensure_prime(p)?;
    if p > MAX_LAMBDA_PRIME {
        return Err(Error::InvalidArgument(format!("lambda oracle supports p <= {MAX_LAMBDA_PRIME}")));
    }
    let ctx = FieldCtx::new(p, 2)?;
    let mut by_subgroup: HashMap<Vec<u32>, (u64, HashSet<FqElem<'_>>)> = HashMap::new();
    let mut tally: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    for alpha in ctx.units() {
        for beta in ctx.prime_units() {
            let group = field_subgroup(ctx.one(), &[alpha, beta]);
            let key: Vec<u32> = group.iter().map(|x| x.repr()).collect();
            let (c, powers) = by_subgroup.entry(key).or_insert_with(|| {
                let c = group.len() as u64;
                let gamma = *group.iter().find(|&&g| mult_order_by_powers(g) == c).expect("cyclic");
                let mut gp = ctx.one();
                for _ in 0..p + 1 {
                    gp = gp * gamma;
                }
                let powers: HashSet<_> = field_subgroup(ctx.one(), &[gp]).into_iter().collect();
                (c, powers)
            });
            let entry = tally.entry(*c).or_insert((0, 0));
            entry.1 += 1;
            if powers.contains(&beta) {
                entry.0 += 1;
            }
        }
    }
    Ok(tally)
}

/// Enumerated split fraction for order `c`, together with the number of
/// order-`c` pairs it was taken over.
pub fn oracle_lambda(c: u64, p: u64) -> Result<(ExactRational, u64)> {
    ensure_prime(p)?;
    if c == 0 || (p * p - 1) % c != 0 || (p - 1) % c == 0 {
        return Err(Error::InvalidArgument(format!("c = {c} must divide p^2-1 but not p-1 (p = {p})")));
    }
    let tally = lambda_tally(p)?;
    let (hits, total) = tally[&c];
    Ok((BigRational::new(BigInt::from(hits), BigInt::from(total)), total))
}

pub fn oracle_lambda_fraction(c: u64, p: u64) -> Result<ExactRational> {
    oracle_lambda(c, p).map(|(fraction, _)| fraction)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Shape {
    /// multiplication by `<alpha, beta>` on the `F_p`-plane `F_{p^2}`
    Plane,
    /// `<T_alpha, U_beta>` over `F_{p^2}`
    Induced,
}

fn shape_of(alpha: FqElem<'_>, beta: FqElem<'_>, parity: Parity) -> Result<Shape> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::NotDimTwo("zero coordinate".into()));
    }
    match (parity, alpha.in_prime_field(), beta.in_prime_field()) {
        (Parity::Even, _, _) | (Parity::Odd, true, _) => Ok(Shape::Plane),
        (Parity::Odd, false, true) => Ok(Shape::Induced),
        (Parity::Odd, false, false) => Err(Error::NotDimTwo(format!("({alpha}, {beta}) has dimension 4 for odd f_K"))),
    }
}

fn realize<'a>(alpha: FqElem<'a>, beta: FqElem<'a>, shape: Shape) -> Result<MatrixGroup<'a>> {
    let ctx = alpha.ctx();
    let gens = match shape {
        Shape::Plane => vec![multiplication_matrix(alpha), multiplication_matrix(beta)],
        Shape::Induced => vec![make_t(alpha)?, make_u(beta)?],
    };
    closure(ctx, &gens, None)
}

/// True iff the two generators share no invariant line, by enumerating all
/// lines (over `F_p` for the plane realization, over `F_{p^2}` otherwise).
pub fn oracle_irreducible_dim2(alpha: FqElem<'_>, beta: FqElem<'_>, parity: Parity) -> Result<bool> {
    let ctx = alpha.ctx();
    let shape = shape_of(alpha, beta, parity)?;
    let (gens, scalars): (Vec<Mat2<'_>>, Vec<FqElem<'_>>) = match shape {
        Shape::Plane => (
            vec![multiplication_matrix(alpha), multiplication_matrix(beta)],
            std::iter::once(ctx.zero()).chain(ctx.prime_units()).collect(),
        ),
        Shape::Induced => (vec![make_t(alpha)?, make_u(beta)?], ctx.elements().collect()),
    };
    let lines = std::iter::once([ctx.zero(), ctx.one()]).chain(scalars.iter().map(|&x| [ctx.one(), x]));
    for v in lines {
        let invariant = gens.iter().all(|g| {
            let w = g.apply(v);
            w[0] * v[1] == w[1] * v[0]
        });
        if invariant {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reference quotient groups for one prime, built from `(c, splitting)`.
pub struct GroupOracle<'a> {
    ctx: &'a FieldCtx,
    references: Vec<(GroupDescriptor, MatrixGroup<'a>)>,
}

impl<'a> GroupOracle<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Result<Self> {
        if ctx.degree() != 2 {
            return Err(Error::InvalidArgument("group oracle works over F_{p^2}".into()));
        }
        let p = ctx.p();
        if p > MAX_GROUP_PRIME {
            return Err(Error::InvalidArgument(format!("group oracle supports p <= {MAX_GROUP_PRIME}")));
        }
        let n = ctx.unit_order();
        let mut references = Vec::new();
        for c in (1..=n).filter(|c| n % c == 0 && (p - 1) % c != 0) {
            let gamma = ctx.gamma_pow(n / c);
            references.push((GroupDescriptor::Cyclic { c }, closure(ctx, &[multiplication_matrix(gamma)], None)?));
            let split = closure(ctx, &[make_t(gamma)?, make_u(ctx.one())?], None)?;
            references.push((GroupDescriptor::Metacyclic { c, splitting: Splitting::Split }, split));
            // least beta in <gamma> n F_p^* outside <gamma^{p+1}>
            let cyclic: HashSet<_> = field_subgroup(ctx.one(), &[gamma]).into_iter().collect();
            let squares: HashSet<_> = field_subgroup(ctx.one(), &[gamma.pow(p + 1)]).into_iter().collect();
            let odd_beta = ctx
                .prime_units()
                .filter(|b| cyclic.contains(b) && !squares.contains(b))
                .min_by_key(|b| b.dlog().expect("unit"));
            if let Some(beta) = odd_beta {
                let group = closure(ctx, &[make_t(gamma)?, make_u(beta)?], None)?;
                references.push((GroupDescriptor::Metacyclic { c, splitting: Splitting::NonSplit }, group));
            }
        }
        Ok(GroupOracle { ctx, references })
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn references(&self) -> impl Iterator<Item = &(GroupDescriptor, MatrixGroup<'a>)> {
        self.references.iter()
    }

    /// The unique reference isomorphic to `group`.
    pub fn identify(&self, group: &MatrixGroup<'a>) -> Result<GroupDescriptor> {
        let matches: Vec<GroupDescriptor> = self
            .references
            .iter()
            .filter(|(_, r)| r.order() == group.order() && is_isomorphic(group, r))
            .map(|(d, _)| *d)
            .collect();
        match matches.as_slice() {
            [d] => Ok(*d),
            [] => Err(Error::Internal(format!("no reference group matches {group:?}"))),
            many => Err(Error::Internal(format!("group {group:?} matches several references: {many:?}"))),
        }
    }

    pub fn classify(&self, alpha: FqElem<'a>, beta: FqElem<'a>, parity: Parity) -> Result<GroupDescriptor> {
        let shape = shape_of(alpha, beta, parity)?;
        self.identify(&realize(alpha, beta, shape)?)
    }
}

/// Brute-force group identification for a single pair.
pub fn oracle_group_class(alpha: FqElem<'_>, beta: FqElem<'_>, parity: Parity) -> Result<GroupDescriptor> {
    GroupOracle::new(alpha.ctx())?.classify(alpha, beta, parity)
}

/// Recounts the census from raw pairs: realize each pair's group, identify
/// it, halve the pair counts (orbits have size 2) and weight by the number
/// of submodules, `(2, n)` for the plane realization and `(1, 2n)` for the
/// induced one.
pub fn oracle_census_table(shape: &CensusShape, exec: Exec) -> Result<CensusTable> {
    let CensusShape { p, n, parity } = *shape;
    ensure_prime(p)?;
    let ctx = FieldCtx::new(p, 2)?;
    let oracle = GroupOracle::new(&ctx)?;

    // distinct realized groups with their raw pair counts
    let mut groups: Vec<(Shape, MatrixGroup<'_>, u64)> = Vec::new();
    let mut slot: HashMap<(Shape, Vec<[u32; 4]>), usize> = HashMap::new();
    for alpha in ctx.units() {
        for beta in ctx.units() {
            if alpha.in_prime_field() && beta.in_prime_field() {
                continue;
            }
            let Ok(shape) = shape_of(alpha, beta, parity) else {
                continue;
            };
            let group = realize(alpha, beta, shape)?;
            let key = (shape, group.element_key());
            match slot.get(&key) {
                Some(&i) => groups[i].2 += 1,
                None => {
                    slot.insert(key, groups.len());
                    groups.push((shape, group, 1));
                }
            }
        }
    }

    let identified = exec.map(&groups, |(_, g, _)| oracle.identify(g));
    let mut counts: BTreeMap<GroupDescriptor, UnboundedInt> = BTreeMap::new();
    let mut raw: BTreeMap<(GroupDescriptor, Shape), u64> = BTreeMap::new();
    for ((shape, _, pairs), descriptor) in groups.iter().zip(identified) {
        *raw.entry((descriptor?, *shape)).or_default() += pairs;
    }
    for ((descriptor, shape), pairs) in raw {
        if pairs % 2 != 0 {
            return Err(Error::Internal(format!("{pairs} raw pairs for {descriptor:?}: orbits must pair up")));
        }
        let weight = match shape {
            Shape::Plane => submodule_count(2, n, p)?,
            Shape::Induced => submodule_count(1, 2 * n, p)?,
        };
        *counts.entry(descriptor).or_default() += weight * BigUint::from(pairs / 2);
    }
    let rows: Vec<CensusRow> = counts.into_iter().map(|(group, count)| CensusRow { group, count }).collect();
    let total_classes: UnboundedInt = rows.iter().map(|r| &r.count).sum();
    let total_extensions = &total_classes * BigUint::from(p * p);
    Ok(CensusTable { rows, total_classes, total_extensions })
}

pub fn oracle_census(k: &LocalFieldParams, exec: Exec) -> Result<CensusReport> {
    Ok(CensusReport::from_table(*k, oracle_census_table(&CensusShape::from(k), exec)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

/// Result of one verification suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl VerifyOutcome {
    fn new(suite: &str) -> Self {
        VerifyOutcome { suite: suite.to_string(), cases: 0, failures: Vec::new() }
    }

    fn check<T: PartialEq + fmt::Debug>(&mut self, input: impl fmt::Display, expected: T, got: T) {
        self.cases += 1;
        if expected != got {
            self.failures.push(Failure {
                input: input.to_string(),
                expected: format!("{expected:?}"),
                got: format!("{got:?}"),
            });
        }
    }

    fn error(&mut self, input: impl fmt::Display, err: Error) {
        self.cases += 1;
        self.failures.push(Failure { input: input.to_string(), expected: "a value".into(), got: err.to_string() });
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} cases, {} failures", self.suite, self.cases, self.failures.len())
    }
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| ensure_prime(p).is_ok()).collect()
}

/// `psi` against enumeration on `[1, side]^2`.
pub fn verify_psi(side: u64, exec: Exec) -> VerifyOutcome {
    let grid: Vec<(u64, u64)> = (1..=side).flat_map(|a| (1..=side).map(move |b| (a, b))).collect();
    let results = exec.map(&grid, |&(a, b)| (psi(a, b), oracle_psi(a, b)));
    let mut out = VerifyOutcome::new("psi");
    for (&(a, b), (formula, brute)) in grid.iter().zip(results) {
        match formula {
            Ok(v) => out.check(format!("psi({a}, {b})"), brute, v),
            Err(e) => out.error(format!("psi({a}, {b})"), e),
        }
    }
    out
}

/// `lambda_split` against the enumerated fraction, and `psi(c, p-1)`
/// against the enumerated pair count, for every admissible `c`.
pub fn verify_lambda(max_p: u64, exec: Exec) -> VerifyOutcome {
    let primes = primes_up_to(max_p.min(MAX_LAMBDA_PRIME));
    let tallies = exec.map(&primes, |&p| lambda_tally(p));
    let mut out = VerifyOutcome::new("lambda");
    for (&p, tally) in primes.iter().zip(tallies) {
        let tally = match tally {
            Ok(t) => t,
            Err(e) => {
                out.error(format!("p={p}"), e);
                continue;
            }
        };
        for c in crate::numtheory::admissible_orders(p) {
            let (hits, total) = tally.get(&c).copied().unwrap_or((0, 0));
            let input = format!("lambda({c}, {p})");
            match (lambda_split(c, p), psi(c, p - 1)) {
                (Ok(lambda), Ok(count)) => {
                    let brute = BigRational::new(BigInt::from(hits), BigInt::from(total.max(1)));
                    out.check(&input, (brute, BigUint::from(total)), (lambda, count));
                }
                (Err(e), _) | (_, Err(e)) => out.error(input, e),
            }
        }
    }
    out
}

/// `classify_pair` against [`GroupOracle`] on every orbit representative,
/// both parities; also checks each representative is irreducible.
pub fn verify_groups(max_p: u64, exec: Exec) -> VerifyOutcome {
    let mut out = VerifyOutcome::new("groups");
    for p in primes_up_to(max_p.min(MAX_GROUP_PRIME)) {
        let ctx = match FieldCtx::new(p, 2) {
            Ok(c) => c,
            Err(e) => {
                out.error(format!("p={p}"), e);
                continue;
            }
        };
        let oracle = match GroupOracle::new(&ctx) {
            Ok(o) => o,
            Err(e) => {
                out.error(format!("p={p}"), e);
                continue;
            }
        };
        for parity in [Parity::Even, Parity::Odd] {
            let reps = match enumerate_dim2_orbits(&ctx, parity) {
                Ok(r) => r,
                Err(e) => {
                    out.error(format!("p={p} {parity}"), e);
                    continue;
                }
            };
            let results = exec.map(&reps, |pair| {
                let formula = classify_pair(pair.alpha, pair.beta, parity);
                let brute = oracle.classify(pair.alpha, pair.beta, parity);
                let irreducible = oracle_irreducible_dim2(pair.alpha, pair.beta, parity);
                (formula, brute, irreducible)
            });
            for (pair, (formula, brute, irreducible)) in reps.iter().zip(results) {
                let input = format!("p={p} {parity} ({}, {})", pair.alpha, pair.beta);
                match (formula, brute, irreducible) {
                    (Ok(f), Ok(b), Ok(irr)) => out.check(&input, (b, true), (f, irr)),
                    (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => out.error(input, e),
                }
            }
        }
    }
    out
}

/// Oracle census against the closed form for `n in {1, 2}` and both
/// parities.
pub fn verify_census(max_p: u64, exec: Exec) -> VerifyOutcome {
    let mut out = VerifyOutcome::new("census");
    let mut shapes = Vec::new();
    for p in primes_up_to(max_p.min(MAX_GROUP_PRIME)) {
        for n in [1, 2] {
            for parity in [Parity::Odd, Parity::Even] {
                shapes.push(CensusShape { p, n, parity });
            }
        }
    }
    // the oracle parallelizes internally
    let results: Vec<_> = shapes
        .iter()
        .map(|s| (census_table(s, RowFilter::NonZero), oracle_census_table(s, exec)))
        .collect();
    for (s, (formula, brute)) in shapes.iter().zip(results) {
        let input = format!("p={} n={} f_K {}", s.p, s.n, s.parity);
        match (formula, brute) {
            (Ok(f), Ok(b)) => out.check(input, b, f),
            (Err(e), _) | (_, Err(e)) => out.error(input, e),
        }
    }
    out
}
