//! The Cayley graph `Cay(G, S)` on `G = GF(p^m) × GF(q)^t`, its character-sum
//! spectrum, and the explicit isomorphism `φ` from the Hermitian forms graph.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::code_construct::{CoefficientTuple, TupleSpace};
use crate::enumerate::{self, EnumConfig};
use crate::error::{Error, Result};
use crate::exp_sums::{ResidueCounts, ValueDistribution};
use crate::finite_field::{FieldCtx, FieldElement};
use crate::hermitian_graph::{matrix_rank, HermitianMatrix, HermitianSpace};

/// `(u_0, u_1, …, u_t)` with `u_0 ∈ GF(p^m)` and `u_j ∈ GF(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElementG {
    pub u0: FieldElement,
    pub u: Vec<FieldElement>,
}

impl GroupElementG {
    pub fn identity(t: usize) -> Self {
        Self { u0: FieldElement::ZERO, u: vec![FieldElement::ZERO; t] }
    }

    pub fn is_identity(&self) -> bool {
        self.u0.is_zero() && self.u.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Self) -> Self {
        let gf = ctx.field();
        Self { u0: gf.add(self.u0, other.u0), u: self.u.iter().zip(&other.u).map(|(&a, &b)| gf.add(a, b)).collect() }
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Self {
        let gf = ctx.field();
        Self { u0: gf.neg(self.u0), u: self.u.iter().map(|&a| gf.neg(a)).collect() }
    }
}

/// `S = {(x^{p^m+1}, x^{p+1}, x^{p^3+1}, …, x^{p^{m-2}+1}) : x ∈ GF(q)^*}`,
/// sorted and without repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSetS {
    pub elements: Vec<GroupElementG>,
}

impl ConnectionSetS {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GroupElementG) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_negation_closed(&self, ctx: &FieldCtx) -> bool {
        self.elements.iter().all(|g| self.contains(&g.neg(ctx)))
    }
}

/// The image of `x ↦ (x^{p^m+1}, x^{p+1}, …)` over `GF(q)^*`, checked to
/// have `(q-1)/(p+1)` elements and to be closed under negation.
pub fn build_connection_set(ctx: &FieldCtx) -> Result<ConnectionSetS> {
    let params = ctx.params();
    let gf = ctx.field();
    let group = params.length();
    let twists = params.twists();
    let mut elements: Vec<GroupElementG> = (0..group)
        .map(|i| {
            let mut coords = twists.iter().map(|&tw| gf.pi_pow(((i * tw) % group) as i64));
            let u0 = coords.next().expect("first coordinate");
            GroupElementG { u0, u: coords.collect() }
        })
        .collect();
    elements.sort();
    elements.dedup();
    let s = ConnectionSetS { elements };
    let expected = (params.q - 1) / (params.p as u64 + 1);
    if s.len() as u64 != expected {
        return Err(Error::InternalInconsistency(format!("|S| = {}, expected {expected}", s.len())));
    }
    if !s.is_negation_closed(ctx) {
        return Err(Error::InternalInconsistency("S is not closed under negation".into()));
    }
    Ok(s)
}

/// `χ_α(S) = Σ_{u ∈ S} ζ_p^{Tr_1^m(α_0 u_0) + Σ_j Tr_1^n(α_j u_j)}` as an
/// exact integer.
pub fn character_value(ctx: &FieldCtx, coeffs: &CoefficientTuple, s: &ConnectionSetS) -> Result<i64> {
    coeffs.validate(ctx)?;
    let gf = ctx.field();
    let p = ctx.params().p;
    let mut counts = ResidueCounts::new(p);
    for g in &s.elements {
        let mut value = ctx.trace_half_abs(gf.mul(coeffs.alpha0, g.u0))? as u32;
        for (&a, &u) in coeffs.alphas.iter().zip(&g.u) {
            value += ctx.trace_full_abs(gf.mul(a, u)) as u32;
        }
        counts.counts[(value % p) as usize] += 1;
    }
    counts.rational_value()
}

/// Eigenvalue multiset of `Cay(G, S)`: one character sum per coefficient
/// tuple.
pub fn spectrum_of_cayley(ctx: &FieldCtx, cfg: &EnumConfig) -> Result<ValueDistribution> {
    let space = TupleSpace::new(ctx)?;
    let total = cfg.check(space.len())?;
    let s = build_connection_set(ctx)?;
    let counts = enumerate::histogram(cfg, total, "character sums", |range| {
        let mut h = BTreeMap::new();
        for idx in range {
            *h.entry(character_value(ctx, &space.tuple(idx), &s)?).or_insert(0u64) += 1;
        }
        Ok(h)
    })?;
    Ok(counts.into_iter().map(|(v, c)| (BigInt::from(v), BigUint::from(c))).collect())
}

/// The `m × m` matrix `Ψ` whose column `i` is `(e_1^{p^{2i-1}}, …, e_m^{p^{2i-1}})^T`,
/// row-major.
pub fn moore_matrix(ctx: &FieldCtx, basis: &[FieldElement]) -> Vec<FieldElement> {
    let gf = ctx.field();
    let m = basis.len();
    let mut entries = vec![FieldElement::ZERO; m * m];
    for (row, &e) in basis.iter().enumerate() {
        for col in 0..m {
            entries[row * m + col] = gf.frobenius(e, 2 * col as u32 + 1);
        }
    }
    entries
}

/// Whether `Ψ` is nonsingular over GF(q), i.e. the elements form a
/// GF(p^2)-basis of GF(q).
pub fn moore_matrix_nonsingular(ctx: &FieldCtx, basis: &[FieldElement]) -> bool {
    let m = ctx.params().m as usize;
    basis.len() == m && matrix_rank(ctx.field(), moore_matrix(ctx, basis), m, m) == m
}

/// `(1, π, …, π^{m-1})`, or the first power basis `(1, π^k, …, π^{k(m-1)})`
/// with a nonsingular Moore matrix.
pub fn default_basis(ctx: &FieldCtx) -> Result<Vec<FieldElement>> {
    let m = ctx.params().m as i64;
    let gf = ctx.field();
    for k in 1..gf.group_order() as i64 {
        let basis: Vec<FieldElement> = (0..m).map(|i| gf.pi_pow(i * k)).collect();
        if moore_matrix_nonsingular(ctx, &basis) {
            return Ok(basis);
        }
    }
    Err(Error::NotABasis)
}

/// The map `φ(H) = (f_H(e, e^{p^m}), f_H(e, e^p), f_H(e, e^{p^3}), …,
/// f_H(e, e^{p^{m-2}}))` with `f_H(x, y) = x H y^T`.
pub struct Phi<'a> {
    ctx: &'a FieldCtx,
    basis: Vec<FieldElement>,
    /// `e^{p^k}` for each output coordinate.
    conjugates: Vec<Vec<FieldElement>>,
}

impl<'a> Phi<'a> {
    pub fn new(ctx: &'a FieldCtx, basis: &[FieldElement]) -> Result<Self> {
        if !moore_matrix_nonsingular(ctx, basis) {
            return Err(Error::NotABasis);
        }
        let params = ctx.params();
        let gf = ctx.field();
        let powers = std::iter::once(params.m).chain((1..=params.t).map(|j| 2 * j - 1));
        let conjugates = powers.map(|k| basis.iter().map(|&e| gf.frobenius(e, k)).collect()).collect();
        Ok(Self { ctx, basis: basis.to_vec(), conjugates })
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    fn bilinear(&self, h: &HermitianMatrix, y: &[FieldElement]) -> FieldElement {
        let gf = self.ctx.field();
        let mut acc = FieldElement::ZERO;
        for (i, &x) in self.basis.iter().enumerate() {
            let mut row = FieldElement::ZERO;
            for (j, &yj) in y.iter().enumerate() {
                row = gf.add(row, gf.mul(h.get(i, j), yj));
            }
            acc = gf.add(acc, gf.mul(x, row));
        }
        acc
    }

    pub fn apply(&self, h: &HermitianMatrix) -> Result<GroupElementG> {
        let mut coords = self.conjugates.iter().map(|y| self.bilinear(h, y));
        let u0 = coords.next().expect("first coordinate");
        if !self.ctx.in_half_field(u0) {
            return Err(Error::InternalInconsistency("φ(H)_0 is not in GF(p^m)".into()));
        }
        Ok(GroupElementG { u0, u: coords.collect() })
    }
}

pub fn phi(ctx: &FieldCtx, basis: &[FieldElement], h: &HermitianMatrix) -> Result<GroupElementG> {
    Phi::new(ctx, basis)?.apply(h)
}

/// Hermitian `m × m` matrices over the quadratic subfield GF(p^2) of the
/// code field.
pub fn quadratic_hermitian_space(ctx: &FieldCtx) -> Result<HermitianSpace<'_>> {
    HermitianSpace::new(ctx.field(), ctx.params().p as u64, ctx.params().m as usize)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub clauses: Vec<Clause>,
    /// Whether injectivity was also checked by enumerating every matrix.
    pub exhaustive: bool,
    pub phi_d_size: usize,
    pub s_size: usize,
    pub group_order: BigUint,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Clause> {
        self.clauses.iter().find(|c| !c.passed)
    }
}

const HOMOMORPHISM_SAMPLES: usize = 256;

fn random_hermitian(
    space: &HermitianSpace<'_>,
    base: &[FieldElement],
    quad: &[FieldElement],
    rng: &mut StdRng,
) -> HermitianMatrix {
    let d = space.dim();
    let mut h = space.zero();
    for i in 0..d {
        h.entries[i * d + i] = base[rng.gen_range(0..base.len())];
        for j in (i + 1)..d {
            let x = quad[rng.gen_range(0..quad.len())];
            h.entries[i * d + j] = x;
            h.entries[j * d + i] = space.conj(x);
        }
    }
    h
}

/// Checks that `φ` is a group isomorphism from the Hermitian matrices onto
/// `G` carrying the rank-one matrices `D` onto `S`. Clause failures are
/// recorded in the report, not returned as errors.
pub fn isomorphism_report(ctx: &FieldCtx, basis: &[FieldElement], cfg: &EnumConfig) -> Result<IsoReport> {
    let params = ctx.params();
    let phi = Phi::new(ctx, basis)?;
    let space = quadratic_hermitian_space(ctx)?;
    let mut clauses = Vec::new();

    // (a) homomorphism, sampled
    let base = space.base_elements();
    let quad = space.quad_elements();
    let mut rng = StdRng::seed_from_u64(0x9e37_79b9);
    let mut bad = None;
    for k in 0..HOMOMORPHISM_SAMPLES {
        let h1 = random_hermitian(&space, &base, &quad, &mut rng);
        let h2 = random_hermitian(&space, &base, &quad, &mut rng);
        let lhs = phi.apply(&space.add(&h1, &h2))?;
        let rhs = phi.apply(&h1)?.add(ctx, &phi.apply(&h2)?);
        if lhs != rhs {
            bad = Some(k);
            break;
        }
    }
    clauses.push(Clause {
        name: "homomorphism",
        passed: bad.is_none() && phi.apply(&space.zero())?.is_identity(),
        detail: match bad {
            None => format!("φ(H1 + H2) = φ(H1) + φ(H2) on {HOMOMORPHISM_SAMPLES} random pairs"),
            Some(k) => format!("additivity fails on sample {k}"),
        },
    });

    // (b) injectivity: the Moore matrix always, enumeration when feasible
    let moore = moore_matrix_nonsingular(ctx, basis);
    let count = space.count();
    let exhaustive = count <= cfg.cap as u128;
    let mut detail = format!("Moore matrix nonsingular: {moore}");
    let mut injective = moore;
    if exhaustive {
        let all = space.enumerate_all(cfg)?;
        let mut images = HashSet::with_capacity(all.len());
        let mut kernel = 0usize;
        for h in &all {
            let g = phi.apply(h)?;
            if g.is_identity() {
                kernel += 1;
            }
            images.insert(g);
        }
        let distinct = images.len() == all.len();
        injective &= distinct && kernel == 1;
        detail.push_str(&format!("; {} matrices, {} distinct images, kernel size {kernel}", all.len(), images.len()));
    }
    clauses.push(Clause { name: "injectivity", passed: injective, detail });

    // (c) φ(D) = S
    let s = build_connection_set(ctx)?;
    // rows of GF(p^2)^m number q, already bounded by the field tables
    let row_cfg = EnumConfig { cap: cfg.cap.max(params.q), ..*cfg };
    let d_set = space.enumerate_rank1(&row_cfg)?;
    let mut images: Vec<GroupElementG> = d_set.iter().map(|h| phi.apply(h)).collect::<Result<_>>()?;
    images.sort();
    images.dedup();
    let expected = ((params.q - 1) / (params.p as u64 + 1)) as usize;
    clauses.push(Clause {
        name: "phi(D) = S",
        passed: images == s.elements && d_set.len() == expected,
        detail: format!("|D| = {}, |φ(D)| = {}, |S| = {}", d_set.len(), images.len(), s.len()),
    });

    // (d) |H| = |G| = p^{m^2}
    let p = BigUint::from(params.p);
    let h_order = BigUint::from(params.p).pow(params.m * params.m);
    let g_order = p.pow(params.m) * BigUint::from(params.q).pow(params.t);
    let group_order = p.pow(params.dimension());
    clauses.push(Clause {
        name: "cardinality",
        passed: h_order == g_order && g_order == group_order && BigUint::from(count) == h_order,
        detail: format!("|H| = {h_order}, |G| = {g_order}"),
    });

    Ok(IsoReport { clauses, exhaustive, phi_d_size: images.len(), s_size: s.len(), group_order })
}

/// [`isomorphism_report`], failing with the first violated clause.
pub fn verify_isomorphism(ctx: &FieldCtx, basis: &[FieldElement], cfg: &EnumConfig) -> Result<IsoReport> {
    let report = isomorphism_report(ctx, basis, cfg)?;
    if let Some(c) = report.first_failure() {
        return Err(Error::VerificationFailed { clause: c.name.to_string(), detail: c.detail.clone() });
    }
    Ok(report)
}
