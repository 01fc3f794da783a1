//! 2x2 matrices over `F_{p^2}`, generated subgroups and a brute-force
//! abstract isomorphism test.

use std::collections::hash_map::{Entry, HashMap};
use std::fmt;
use std::ops::Mul;

use crate::census::check_quadratic;
use crate::error::{Error, Result};
use crate::finite_field::{FieldCtx, FqElem};
use crate::numtheory::gcd;

/// Row-major `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2<'a> {
    m: [FqElem<'a>; 4],
}

impl<'a> Mat2<'a> {
    pub fn new(a: FqElem<'a>, b: FqElem<'a>, c: FqElem<'a>, d: FqElem<'a>) -> Self {
        Mat2 { m: [a, b, c, d] }
    }

    pub fn identity(ctx: &'a FieldCtx) -> Self {
        Self::diag(ctx.one(), ctx.one())
    }

    pub fn diag(x: FqElem<'a>, y: FqElem<'a>) -> Self {
        let z = x.ctx().zero();
        Mat2::new(x, z, z, y)
    }

    pub fn anti_diag(top_right: FqElem<'a>, bottom_left: FqElem<'a>) -> Self {
        let z = top_right.ctx().zero();
        Mat2::new(z, top_right, bottom_left, z)
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.m[0].ctx()
    }

    pub fn entries(&self) -> [FqElem<'a>; 4] {
        self.m
    }

    pub fn det(&self) -> FqElem<'a> {
        let [a, b, c, d] = self.m;
        a * d - b * c
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.det().try_inv().map_err(|_| Error::InvalidArgument(format!("{self:?} is singular")))?;
        let [a, b, c, d] = self.m;
        Ok(Mat2::new(d * inv, -b * inv, -c * inv, a * inv))
    }

    pub fn apply(&self, v: [FqElem<'a>; 2]) -> [FqElem<'a>; 2] {
        let [a, b, c, d] = self.m;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    pub fn is_diagonal(&self) -> bool {
        self.m[1].is_zero() && self.m[2].is_zero()
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && self.m[0] == self.m[3]
    }
}

impl<'a> Mul for Mat2<'a> {
    type Output = Mat2<'a>;
    fn mul(self, rhs: Self) -> Self {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = rhs.m;
        Mat2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

impl fmt::Debug for Mat2<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// `T_alpha = diag(alpha, alpha^p)`, the image of inertia.
pub fn make_t(alpha: FqElem<'_>) -> Result<Mat2<'_>> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement("diagonal matrix T"));
    }
    Ok(Mat2::diag(alpha, alpha.frobenius()))
}

/// `U_beta = [[0, beta], [1, 0]]`, the image of Frobenius.
pub fn make_u(beta: FqElem<'_>) -> Result<Mat2<'_>> {
    if beta.is_zero() {
        return Err(Error::ZeroElement("matrix U"));
    }
    Ok(Mat2::anti_diag(beta, beta.ctx().one()))
}

/// `M_j = diag(1, gamma_0^{jp})`.
pub fn conjugator(ctx: &FieldCtx, j: u64) -> Mat2<'_> {
    Mat2::diag(ctx.one(), ctx.gamma_pow(j * ctx.p()))
}

/// `V_j = [[0, gamma_0^j], [gamma_0^{jp}, 0]]`.
pub fn v_matrix(ctx: &FieldCtx, j: u64) -> Mat2<'_> {
    Mat2::anti_diag(ctx.gamma_pow(j), ctx.gamma_pow(j * ctx.p()))
}

/// Multiplication by `x` on `F_{p^2}` as an `F_p`-linear map, in the basis
/// `{1, theta}`. All entries lie in the prime field.
pub fn multiplication_matrix(x: FqElem<'_>) -> Mat2<'_> {
    let ctx = x.ctx();
    let coeffs = x.coeffs();
    let a = ctx.from_int(coeffs[0] as i64);
    let b = ctx.from_int(coeffs.get(1).copied().unwrap_or(0) as i64);
    let k = ctx.from_int(ctx.theta_square_constant() as i64);
    // x * 1 = a + b theta, x * theta = b k + (a + b) theta
    Mat2::new(a, b * k, b, a + b)
}

/// Default closure cap, `8 (p^2 - 1)^2`.
pub fn default_cap(ctx: &FieldCtx) -> usize {
    let n = (ctx.p() * ctx.p() - 1) as usize;
    8 * n * n
}

/// A finite matrix group together with its element list (identity first).
#[derive(Clone)]
pub struct MatrixGroup<'a> {
    ctx: &'a FieldCtx,
    generators: Vec<Mat2<'a>>,
    elements: Vec<Mat2<'a>>,
    index: HashMap<Mat2<'a>, usize>,
}

impl fmt::Debug for MatrixGroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("generators", &self.generators)
            .field("order", &self.order())
            .finish()
    }
}

/// Subgroup generated by `generators`, by breadth-first closure under
/// right multiplication. Fails once more than `cap` elements appear.
pub fn closure<'a>(ctx: &'a FieldCtx, generators: &[Mat2<'a>], cap: Option<usize>) -> Result<MatrixGroup<'a>> {
    let cap = cap.unwrap_or_else(|| default_cap(ctx));
    for g in generators {
        if g.det().is_zero() {
            return Err(Error::InvalidArgument(format!("generator {g:?} is singular")));
        }
    }
    let id = Mat2::identity(ctx);
    let mut elements = vec![id];
    let mut index = HashMap::from([(id, 0)]);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head];
        head += 1;
        for g in generators {
            let y = x * *g;
            if let Entry::Vacant(slot) = index.entry(y) {
                if elements.len() == cap {
                    return Err(Error::ClosureCap { cap });
                }
                slot.insert(elements.len());
                elements.push(y);
            }
        }
    }
    Ok(MatrixGroup { ctx, generators: generators.to_vec(), elements, index })
}

impl<'a> MatrixGroup<'a> {
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Mat2<'a>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Mat2<'a>] {
        &self.elements
    }

    pub fn contains(&self, m: &Mat2<'a>) -> bool {
        self.index.contains_key(m)
    }

    pub fn position(&self, m: &Mat2<'a>) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|x| self.generators.iter().all(|y| *x * *y == *y * *x))
    }

    /// Full multiplication table on element positions.
    pub fn cayley_table(&self) -> CayleyTable {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for x in &self.elements {
            for y in &self.elements {
                table.push(self.index[&(*x * *y)] as u32);
            }
        }
        CayleyTable { n, table }
    }

    /// Element orders in position order.
    pub fn element_orders(&self) -> Vec<u32> {
        self.cayley_table().orders()
    }

    /// The elements as a sorted key, for comparing subgroups by equality.
    pub fn element_key(&self) -> Vec<[u32; 4]> {
        let mut key: Vec<[u32; 4]> = self.elements.iter().map(|m| m.entries().map(|e| e.repr())).collect();
        key.sort_unstable();
        key
    }
}

pub struct CayleyTable {
    n: usize,
    table: Vec<u32>,
}

impl CayleyTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.n + y as usize]
    }

    /// Assumes position 0 is the identity.
    pub fn orders(&self) -> Vec<u32> {
        (0..self.n as u32)
            .map(|x| {
                let mut acc = x;
                let mut k = 1;
                while acc != 0 {
                    acc = self.mul(acc, x);
                    k += 1;
                }
                k
            })
            .collect()
    }
}

/// Abstract isomorphism test by exhaustive search for images of the
/// generators of `g1`, after matching orders and element-order statistics.
pub fn is_isomorphic(g1: &MatrixGroup<'_>, g2: &MatrixGroup<'_>) -> bool {
    if g1.order() != g2.order() {
        return false;
    }
    let (t1, t2) = (g1.cayley_table(), g2.cayley_table());
    let (o1, o2) = (t1.orders(), t2.orders());
    let (mut s1, mut s2) = (o1.clone(), o2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return false;
    }
    let gens: Vec<u32> = g1.generators.iter().map(|g| g1.index[g] as u32).collect();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| (0..t2.len() as u32).filter(|&y| o2[y as usize] == o1[g as usize]).collect())
        .collect();
    let mut choice = vec![0u32; gens.len()];
    search(&t1, &t2, &gens, &candidates, &mut choice, 0)
}

fn search(t1: &CayleyTable, t2: &CayleyTable, gens: &[u32], cands: &[Vec<u32>], choice: &mut [u32], depth: usize) -> bool {
    if depth == gens.len() {
        return extends_to_isomorphism(t1, t2, gens, choice);
    }
    for &y in &cands[depth] {
        choice[depth] = y;
        if search(t1, t2, gens, cands, choice, depth + 1) {
            return true;
        }
    }
    false
}

fn extends_to_isomorphism(t1: &CayleyTable, t2: &CayleyTable, gens: &[u32], images: &[u32]) -> bool {
    const UNSET: u32 = u32::MAX;
    let n = t1.len();
    let mut phi = vec![UNSET; n];
    let mut used = vec![false; n];
    phi[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = t1.mul(x, g) as usize;
            let img = t2.mul(phi[x as usize], h);
            if phi[y] == UNSET {
                if used[img as usize] {
                    return false;
                }
                used[img as usize] = true;
                phi[y] = img;
                queue.push(y as u32);
            } else if phi[y] != img {
                return false;
            }
        }
    }
    queue.len() == n
}

/// Invariants of `<T_alpha, U_beta>` in the induced case: `c = |<alpha, beta>|`
/// and the class of `j` with `beta = gamma_0^{(p+1) j}` modulo `(m, p - 1)`,
/// where `gamma = gamma_0^m` generates `<alpha, beta>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub c: u64,
    pub m: u64,
    pub j: u64,
    pub j_modulus: u64,
    pub j_class: u64,
}

pub fn canonicalize(alpha: FqElem<'_>, beta: FqElem<'_>) -> Result<CanonicalForm> {
    let ctx = alpha.ctx();
    check_quadratic(ctx)?;
    if alpha.is_zero() || beta.is_zero() || alpha.in_prime_field() || !beta.in_prime_field() {
        return Err(Error::NotDimTwo(format!("canonical form needs alpha outside F_p and beta in F_p^*, got ({alpha}, {beta})")));
    }
    let p = ctx.p();
    let n = ctx.unit_order();
    let (la, lb) = (alpha.dlog()?, beta.dlog()?);
    let m = gcd(gcd(la, lb), n);
    debug_assert_eq!(lb % (p + 1), 0);
    let j = (lb / (p + 1)) % (p - 1).max(1);
    let j_modulus = gcd(m, p - 1);
    Ok(CanonicalForm { c: n / m, m, j, j_modulus, j_class: j % j_modulus })
}

/// `<T_{gamma^m}, V_j>` listed directly as `{T_{gamma^{m i}}, V_{j + m i}}`.
/// Only a group when `m` divides `j (p+1)` modulo `p^2 - 1`, which holds for
/// every [`CanonicalForm`].
pub fn canonical_subgroup(ctx: &FieldCtx, m: u64, j: u64) -> Vec<Mat2<'_>> {
    let n = ctx.unit_order();
    let c = n / gcd(m, n);
    let mut out = Vec::with_capacity(2 * c as usize);
    for i in 0..c {
        out.push(make_t(ctx.gamma_pow(m * i)).expect("unit"));
        out.push(v_matrix(ctx, j + m * i));
    }
    out
}
