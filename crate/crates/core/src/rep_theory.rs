//! Irreducible representations of split metacyclic groups `T x| U` in
//! characteristic `p`, and the symbolic decomposition of the Kummer module.
//!
//! Characters are stored as exponent classes rather than field elements:
//! `alpha` is an `a` prime to `t = ord(alpha)`, `beta` is a `b` modulo
//! `u~ = f / s`. Only orders and `q`-orbits enter the dimension and
//! multiplicity formulas, so no field beyond the integers is built here.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::census::LocalFieldParams;
use crate::error::{Error, Result};
use crate::numtheory::{divisors, ensure_prime, gcd, lcm, mult_order, pow_mod, prime_to_part, uint, UnboundedInt};

/// `<v, tau | v tau v^-1 = tau^q, tau^e = 1, v^f = 1>` with `q = p^f_K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetacyclicGroup {
    p: u64,
    f_k: u32,
    e: u64,
    f: u64,
}

impl MetacyclicGroup {
    pub fn new(p: u64, f_k: u32, e: u64, f: u64) -> Result<Self> {
        ensure_prime(p)?;
        if f_k == 0 || e == 0 || f == 0 {
            return Err(Error::InvalidGroup("e, f and f_K must be positive".into()));
        }
        if e % p == 0 {
            return Err(Error::InvalidGroup(format!("e = {e} is divisible by p = {p}")));
        }
        let q = pow_mod(p, f_k as u64, e);
        if pow_mod(q, f, e) != 1 % e {
            return Err(Error::InvalidGroup(format!("e = {e} does not divide q^f - 1 with q = {p}^{f_k}, f = {f}")));
        }
        Ok(MetacyclicGroup { p, f_k, e, f })
    }

    /// The trivial group over `K` with residue degree `f_k`.
    pub fn trivial(p: u64, f_k: u32) -> Result<Self> {
        Self::new(p, f_k, 1, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f_k(&self) -> u32 {
        self.f_k
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.e * self.f
    }

    /// `q mod m`.
    pub fn q_mod(&self, m: u64) -> u64 {
        pow_mod(self.p, self.f_k as u64, m)
    }
}

/// A conjugacy class of characters `chi` of `T x| U~`, i.e. one irreducible
/// representation over the algebraic closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharClass {
    /// Order of `alpha`.
    pub t: u64,
    /// Least representative of the exponent of `alpha` under `a -> a q`.
    pub a: u64,
    /// Exponent of `beta` as a `u~`-th root of unity.
    pub b: u64,
    /// `u~ = f / s`, the order of `v^s`.
    pub u_tilde: u64,
    /// `[F_p(alpha) : F_p]`.
    pub r: u64,
    /// `[U : U~]`, the dimension over the algebraic closure.
    pub s: u64,
    /// `[F_p(beta) : F_p]`.
    pub w: u64,
}

impl CharClass {
    /// Formal order of `beta` in `Z/u~`.
    pub fn beta_order(&self) -> u64 {
        self.u_tilde / gcd(self.b, self.u_tilde)
    }

    pub fn dim_fpbar(&self) -> u64 {
        self.s
    }

    /// Degree over `F_p` of the field of definition.
    pub fn def_field_degree(&self, f_k: u32) -> u64 {
        lcm(self.w, gcd(self.r, f_k as u64))
    }

    pub fn is_trivial(&self) -> bool {
        self.t == 1 && self.beta_order() == 1
    }
}

fn orbit_min(a: u64, q: u64, t: u64) -> u64 {
    let mut x = a;
    let mut best = a;
    loop {
        x = x * q % t;
        if x == a {
            return best;
        }
        best = best.min(x);
    }
}

fn make_class(h: &MetacyclicGroup, t: u64, a: u64, b: u64) -> CharClass {
    let p = h.p;
    let r = mult_order(p, t).expect("t is prime to p");
    let s = mult_order(h.q_mod(t), t).expect("t is prime to q");
    debug_assert_eq!(s, r / gcd(r, h.f_k as u64));
    let u_tilde = h.f / s;
    let beta_order = u_tilde / gcd(b, u_tilde);
    // roots of unity of order divisible by p collapse in characteristic p
    let w = mult_order(p, prime_to_part(beta_order, p)).expect("coprime by construction");
    CharClass { t, a, b, u_tilde, r, s, w }
}

/// One canonical character class per irreducible representation of `h`
/// over the algebraic closure, ordered by `(t, a, b)`.
pub fn enumerate_irreducibles(h: &MetacyclicGroup) -> Vec<CharClass> {
    let mut out = Vec::new();
    for t in divisors(h.e) {
        let q = h.q_mod(t);
        let s = if t == 1 { 1 } else { mult_order(q, t).expect("t | e is prime to p") };
        debug_assert_eq!(h.f % s, 0);
        let u_tilde = h.f / s;
        for a in 0..t {
            if gcd(a, t) != 1 || (t > 1 && orbit_min(a, q, t) != a) {
                continue;
            }
            for b in 0..u_tilde {
                out.push(make_class(h, t, a, b));
            }
        }
    }
    out
}

/// `dim_{F_p}` of the rational irreducible containing `c`:
/// `lcm(r w / (r, f_K), r)`.
pub fn rep_dimension(c: &CharClass, f_k: u32) -> u64 {
    let r = c.r;
    lcm(r * c.w / gcd(r, f_k as u64), r)
}

/// Multiplicity `s * [K : Q_p]` of the class in the principal-unit part.
pub fn multiplicity_in_y(c: &CharClass, k: &LocalFieldParams) -> UnboundedInt {
    uint(c.s) * uint(k.n())
}

/// Number of submodules isomorphic to an irreducible with field of
/// definition of degree `d` and multiplicity `m`: `(p^{dm} - 1) / (p^d - 1)`.
pub fn submodule_count(d: u64, m: u64, p: u64) -> Result<UnboundedInt> {
    if d == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!("submodule count needs d, m >= 1 (d={d}, m={m})")));
    }
    let exp = |k: u64| -> Result<u32> {
        u32::try_from(k).map_err(|_| Error::InvalidArgument(format!("exponent {k} too large")))
    };
    let p = BigUint::from(p);
    let num = p.pow(exp(d * m)?) - BigUint::one();
    let den = p.pow(exp(d)?) - BigUint::one();
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("(p^{}-1) not divisible by (p^{d}-1)", d * m)));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepDescriptor {
    pub class: CharClass,
    pub dim_fpbar: u64,
    pub dim_fp: u64,
    pub def_field_degree: u64,
    pub multiplicity: UnboundedInt,
}

impl IrrepDescriptor {
    pub fn new(class: CharClass, k: &LocalFieldParams) -> Self {
        IrrepDescriptor {
            class,
            dim_fpbar: class.dim_fpbar(),
            dim_fp: rep_dimension(&class, k.f_k()),
            def_field_degree: class.def_field_degree(k.f_k()),
            multiplicity: multiplicity_in_y(&class, k),
        }
    }
}

/// The trivial summand `F_p` (from the uniformizer and residue units).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrivialSummand;

/// The summand on which `H` acts through the cyclotomic character. Kept
/// symbolic: its character values are never needed by the census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclotomicSummand;

/// `F^x / (F^x)^p` as `F_p + (sum of irreducibles) + M_omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleInventory {
    pub trivial: TrivialSummand,
    pub cyclotomic: CyclotomicSummand,
    pub rows: Vec<IrrepDescriptor>,
}

impl ModuleInventory {
    pub fn trivial_multiplicity(&self) -> u64 {
        1
    }

    pub fn cyclotomic_multiplicity(&self) -> u64 {
        1
    }

    /// Sum of `dim_fpbar * multiplicity` over the irreducible rows.
    pub fn fpbar_dimension(&self) -> UnboundedInt {
        self.rows.iter().map(|r| uint(r.dim_fpbar) * &r.multiplicity).sum()
    }
}

pub fn module_inventory(h: &MetacyclicGroup, k: &LocalFieldParams) -> Result<ModuleInventory> {
    if h.p != k.p() || h.f_k != k.f_k() {
        return Err(Error::InvalidArgument(format!(
            "group is over p={}, f_K={} but K has p={}, f_K={}",
            h.p,
            h.f_k,
            k.p(),
            k.f_k()
        )));
    }
    let rows = enumerate_irreducibles(h).into_iter().map(|c| IrrepDescriptor::new(c, k)).collect();
    Ok(ModuleInventory { trivial: TrivialSummand, cyclotomic: CyclotomicSummand, rows })
}

/// Groups the classes into `Gal(F_p-bar / F_p)`-orbits, i.e. into the
/// irreducible representations over `F_p`. Each group is sorted and the
/// groups are ordered by their first member.
pub fn rational_classes(h: &MetacyclicGroup) -> Vec<Vec<CharClass>> {
    let classes = enumerate_irreducibles(h);
    let index: HashMap<(u64, u64, u64), usize> =
        classes.iter().enumerate().map(|(i, c)| ((c.t, c.a, c.b), i)).collect();
    let mut parent: Vec<usize> = (0..classes.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, c) in classes.iter().enumerate() {
        let a = if c.t == 1 { 0 } else { orbit_min(c.a * h.p % c.t, h.q_mod(c.t), c.t) };
        let b = c.b * h.p % c.u_tilde;
        let j = index[&(c.t, a, b)];
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        parent[ri.max(rj)] = ri.min(rj);
    }
    let mut groups: Vec<Vec<CharClass>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, class) in classes.iter().enumerate() {
        let root = find(&mut parent, i);
        let g = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(*class);
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64, e_k: u32, f_k: u32) -> LocalFieldParams {
        LocalFieldParams::new(p, e_k, f_k).unwrap()
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(MetacyclicGroup::new(3, 1, 3, 2).is_err());
        assert!(MetacyclicGroup::new(2, 1, 3, 3).is_err());
        assert!(MetacyclicGroup::new(4, 1, 3, 2).is_err());
        assert!(MetacyclicGroup::new(2, 1, 3, 2).is_ok());
    }

    #[test]
    fn trivial_group_has_one_class() {
        let h = MetacyclicGroup::trivial(5, 1).unwrap();
        let classes = enumerate_irreducibles(&h);
        assert_eq!(classes.len(), 1);
        assert!(classes[0].is_trivial());
        assert_eq!(rep_dimension(&classes[0], 1), 1);
        assert_eq!(multiplicity_in_y(&classes[0], &k(5, 1, 1)), uint(1));
    }

    #[test]
    fn s3_in_characteristic_two() {
        let h = MetacyclicGroup::new(2, 1, 3, 2).unwrap();
        let classes = enumerate_irreducibles(&h);
        assert_eq!(classes.len(), 3);
        let dims: Vec<u64> = classes.iter().map(|c| rep_dimension(c, 1)).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        let inv = module_inventory(&h, &k(2, 1, 1)).unwrap();
        let mults: Vec<UnboundedInt> = inv.rows.iter().map(|r| r.multiplicity.clone()).collect();
        assert_eq!(mults, vec![uint(1), uint(1), uint(2)]);
        assert_eq!(inv.fpbar_dimension(), uint(6));
    }

    #[test]
    fn dimension_cases() {
        let base = CharClass { t: 1, a: 0, b: 0, u_tilde: 1, r: 1, s: 1, w: 1 };
        assert_eq!(rep_dimension(&base, 1), 1);
        let r2 = CharClass { r: 2, s: 2, ..base };
        assert_eq!(rep_dimension(&r2, 1), 2);
        let w2 = CharClass { w: 2, ..base };
        assert_eq!(rep_dimension(&w2, 3), 2);
        let r2_even = CharClass { r: 2, s: 1, ..base };
        assert_eq!(rep_dimension(&r2_even, 2), 2);
        assert_eq!(r2_even.dim_fpbar(), 1);
        assert_eq!(rep_dimension(&CharClass { r: 2, w: 2, s: 2, ..base }, 1), 4);
    }

    #[test]
    fn multiplicity_examples() {
        let base = CharClass { t: 1, a: 0, b: 0, u_tilde: 1, r: 1, s: 1, w: 1 };
        assert_eq!(multiplicity_in_y(&base, &k(3, 1, 1)), uint(1));
        assert_eq!(multiplicity_in_y(&CharClass { s: 2, ..base }, &k(3, 1, 1)), uint(2));
        assert_eq!(multiplicity_in_y(&base, &k(3, 1, 3)), uint(3));
    }

    #[test]
    fn submodule_counts() {
        assert_eq!(submodule_count(3, 1, 7).unwrap(), uint(1));
        assert_eq!(submodule_count(2, 1, 2).unwrap(), uint(1));
        assert_eq!(submodule_count(2, 2, 3).unwrap(), uint(10));
        assert_eq!(submodule_count(1, 4, 2).unwrap(), uint(15));
        assert!(submodule_count(0, 1, 2).is_err());
    }

    #[test]
    fn orbit_partition_counts_raw_pairs() {
        for (p, f_k, e, f) in [(3, 1, 8, 2), (5, 1, 24, 4), (2, 1, 15, 4), (7, 2, 48, 3), (5, 3, 31, 6)] {
            let h = MetacyclicGroup::new(p, f_k, e, f).unwrap();
            let classes = enumerate_irreducibles(&h);
            let raw: u64 = divisors(e)
                .into_iter()
                .map(|t| {
                    let units = (0..t).filter(|&a| gcd(a, t) == 1).count() as u64;
                    let s = mult_order(h.q_mod(t), t).unwrap();
                    units * (f / s)
                })
                .sum();
            assert_eq!(classes.iter().map(|c| c.s).sum::<u64>(), raw);
            // every raw pair has its q-orbit minimum among the classes
            for c in &classes {
                assert_eq!(orbit_min(c.a, h.q_mod(c.t), c.t), c.a);
            }
        }
    }

    #[test]
    fn regular_representation_audit() {
        for (p, f_k, e, f) in [(3, 1, 8, 2), (5, 1, 24, 2), (7, 1, 48, 2), (5, 2, 24, 1), (13, 1, 21, 6)] {
            let h = MetacyclicGroup::new(p, f_k, e, f).unwrap();
            assert_ne!(h.order() % p, 0);
            let sum: u64 = enumerate_irreducibles(&h).iter().map(|c| c.s * c.s).sum();
            assert_eq!(sum, e * f);
            let kk = k(p, 2, f_k);
            let inv = module_inventory(&h, &kk).unwrap();
            assert_eq!(inv.fpbar_dimension(), uint(h.order() * kk.n()));
            assert_eq!(inv.trivial_multiplicity() + inv.cyclotomic_multiplicity(), 2);
        }
    }

    #[test]
    fn degree_two_characterization() {
        for (p, f_k, e, f) in [(3, 1, 8, 8), (3, 2, 8, 4), (5, 1, 24, 4), (5, 2, 24, 6), (2, 1, 3, 2), (7, 3, 48, 2)] {
            let h = MetacyclicGroup::new(p, f_k, e, f).unwrap();
            for c in enumerate_irreducibles(&h) {
                let two = rep_dimension(&c, f_k) == 2;
                assert_eq!(rep_dimension(&c, f_k), c.dim_fpbar() * c.def_field_degree(f_k));
                if f_k % 2 == 0 {
                    assert_eq!(two, c.r.max(c.w) == 2, "{c:?}");
                    if two {
                        assert_eq!(c.s, 1);
                    }
                } else {
                    assert_eq!(two, (c.r, c.w) == (1, 2) || (c.r, c.w) == (2, 1), "{c:?}");
                }
            }
        }
    }

    #[test]
    fn inventory_checks_field_match() {
        let h = MetacyclicGroup::new(3, 1, 8, 2).unwrap();
        assert!(module_inventory(&h, &k(5, 1, 1)).is_err());
        assert!(module_inventory(&h, &k(3, 1, 2)).is_err());
        let inv = module_inventory(&MetacyclicGroup::trivial(3, 1).unwrap(), &k(3, 1, 1)).unwrap();
        assert_eq!(inv.rows.len(), 1);
        assert_eq!(inv.rows[0].multiplicity, uint(1));
    }

    #[test]
    fn rational_grouping_sizes_match_definition_degree() {
        for (p, f_k, e, f) in [(3, 1, 8, 8), (5, 1, 24, 4), (3, 2, 8, 4)] {
            let h = MetacyclicGroup::new(p, f_k, e, f).unwrap();
            for group in rational_classes(&h) {
                let d = group[0].def_field_degree(f_k);
                assert_eq!(group.len() as u64, d, "{group:?}");
            }
        }
    }
}
