//! Exact bigraded linear algebra: basis enumeration per (ghost, T) bidegree,
//! differential matrices, Betti numbers, and the first page of the
//! hbar-filtration spectral sequence with its induced differential.
//!
//! Every (ghost, T) component of the polynomial complex is finite
//! dimensional, so no truncation is involved: window bounds only select
//! which bidegrees get computed.

use std::collections::HashMap;

use num::{BigRational, Zero};

use crate::matrix::{coordinates_in, Col, Eliminator, SparseMat};
use crate::model::{DifferentialKind, Model};
use crate::superalg::{Element, Monomial};
use crate::{Error, Result};

/// A (ghost number, total degree) bidegree label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub ghost: i32,
    pub tdeg: i32,
}

impl Bidegree {
    pub fn new(ghost: i32, tdeg: i32) -> Self {
        Bidegree { ghost, tdeg }
    }

    pub fn shifted(self, delta: (i32, i32)) -> Self {
        Bidegree {
            ghost: self.ghost + delta.0,
            tdeg: self.tdeg + delta.1,
        }
    }
}

/// Ordered monomial basis of one bidegree component (hbar-free,
/// gamma exponent >= `gamma_min`).
#[derive(Debug, Clone)]
pub struct ComponentBasis {
    pub bd: Bidegree,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl ComponentBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Sparse coordinates of an element; `None` if it leaves the component.
    pub fn coords(&self, e: &Element) -> Option<Col> {
        let mut col: Col = Vec::with_capacity(e.len());
        for (m, c) in e.terms() {
            col.push((self.index_of(m)?, c.clone()));
        }
        col.sort_by_key(|&(r, _)| r);
        Some(col)
    }

    pub fn element_from_coords(&self, model: &Model, col: &Col) -> Element {
        let mut e = Element::zero(model.table());
        for (i, c) in col {
            e.insert_term(self.monomials[*i].clone(), c.clone());
        }
        e
    }
}

/// All monomials of the given bidegree: exactly the exponent vectors with
/// the stated ghost number and total degree.
pub fn enumerate_basis(model: &Model, bd: Bidegree, gamma_min: i32) -> ComponentBasis {
    let table = model.table();
    let gamma = model.gamma_index();
    let hbar = table.hbar();
    // every non-gamma generator index, in table order
    let others: Vec<usize> = (0..table.len())
        .filter(|&i| i != gamma && i != hbar)
        .collect();
    let mut monomials = Vec::new();
    if bd.tdeg >= 0 || gamma_min < 0 {
        let budget = bd.tdeg - gamma_min; // max total degree of the others
        let mut exps = vec![0i32; table.len()];
        enumerate_rec(
            model,
            &others,
            0,
            budget,
            &mut exps,
            bd,
            gamma_min,
            &mut monomials,
        );
    }
    monomials.sort();
    let index = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    ComponentBasis {
        bd,
        monomials,
        index,
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    model: &Model,
    others: &[usize],
    pos: usize,
    budget: i32,
    exps: &mut Vec<i32>,
    bd: Bidegree,
    gamma_min: i32,
    out: &mut Vec<Monomial>,
) {
    if budget < 0 {
        return;
    }
    if pos == others.len() {
        let used: i32 = others.iter().map(|&i| exps[i]).sum();
        let gamma_exp = bd.tdeg - used;
        if gamma_exp < gamma_min {
            return;
        }
        let table = model.table();
        let ghost: i32 = others
            .iter()
            .map(|&i| exps[i] * table.ghost(i))
            .sum::<i32>()
            + gamma_exp; // gamma has ghost 1
        if ghost != bd.ghost {
            return;
        }
        exps[model.gamma_index()] = gamma_exp;
        let factors: Vec<(usize, i32)> = exps
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
            .collect();
        if let Ok(crate::superalg::NormalForm::Term { monomial, .. }) =
            crate::superalg::normalize(table, &factors)
        {
            out.push(monomial);
        }
        exps[model.gamma_index()] = 0;
        return;
    }
    let g = others[pos];
    let max = if model.table().parity(g).is_odd() {
        budget.min(1)
    } else {
        budget
    };
    for e in 0..=max {
        exps[g] = e;
        enumerate_rec(model, others, pos + 1, budget - e, exps, bd, gamma_min, out);
    }
    exps[g] = 0;
}

/// The matrix of a bidegree-homogeneous differential out of `bd`:
/// columns indexed by the source basis, rows by the target basis.
pub fn diff_matrix(
    model: &Model,
    kind: DifferentialKind,
    bd: Bidegree,
    gamma_min: i32,
) -> Result<(ComponentBasis, ComponentBasis, SparseMat)> {
    let Some(shift) = kind.bidegree_shift() else {
        return Err(Error::Domain(
            "Qtotal is not bidegree-homogeneous; use element-level checks".into(),
        ));
    };
    let source = enumerate_basis(model, bd, gamma_min);
    let target = enumerate_basis(model, bd.shifted(shift), gamma_min);
    let mut mat = SparseMat::new(target.dim());
    for mono in &source.monomials {
        let e = Element::from_monomial(model.table(), mono.clone(), BigRational::from_integer(1.into()));
        let image = model.apply_diff(kind, &e)?;
        if image.hbar_degrees().iter().any(|&k| k != 0) {
            panic!("differential image carries hbar; homogeneity check failed");
        }
        let col = target
            .coords(&image)
            .unwrap_or_else(|| panic!("differential image left the target component at {bd:?}"));
        mat.push_col(col);
    }
    Ok((source, target, mat))
}

/// One row of the cohomology report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiEntry {
    pub bd: Bidegree,
    pub dim: usize,
    pub rank_out: usize,
    pub kernel_dim: usize,
    pub rank_in: usize,
    pub betti: usize,
}

/// Betti number of a bidegree-homogeneous differential at `bd`:
/// `dim ker(d out) - rank(d in)` by exact elimination.
pub fn betti(
    model: &Model,
    kind: DifferentialKind,
    bd: Bidegree,
    gamma_min: i32,
) -> Result<BettiEntry> {
    let shift = kind
        .bidegree_shift()
        .ok_or_else(|| Error::Domain("Qtotal has no bidegree shift".into()))?;
    let (source, _, out_mat) = diff_matrix(model, kind, bd, gamma_min)?;
    let (_, _, in_mat) = diff_matrix(model, kind, bd.shifted((-shift.0, -shift.1)), gamma_min)?;
    let rank_out = out_mat.rank();
    let rank_in = in_mat.rank();
    let dim = source.dim();
    let kernel_dim = dim - rank_out;
    assert!(
        kernel_dim >= rank_in,
        "chain condition violated at {bd:?}: ker {kernel_dim} < im {rank_in}"
    );
    Ok(BettiEntry {
        bd,
        dim,
        rank_out,
        kernel_dim,
        rank_in,
        betti: kernel_dim - rank_in,
    })
}

/// E1-page data of the hbar filtration at one bidegree: Q0-cocycles,
/// Q0-boundaries, and chosen representatives of the quotient.
pub struct E1Component {
    pub basis: ComponentBasis,
    pub cocycles: Vec<Col>,
    pub boundary_rank: usize,
    /// Representatives extending the boundaries to the cocycles.
    pub reps: Vec<Col>,
    /// Echelon columns of the boundary space (for quotient coordinates).
    boundaries: Vec<Col>,
}

impl E1Component {
    pub fn e1_dim(&self) -> usize {
        self.reps.len()
    }
}

/// The induced d1 out of one bidegree, with the data needed for E2.
pub struct D1Report {
    pub bd: Bidegree,
    pub e1_dim: usize,
    /// Induced matrix, columns = source representatives, rows = target reps.
    pub matrix: Vec<Col>,
    pub rank: usize,
    pub rank_in: usize,
    pub e2_betti: usize,
}

/// Computes and memoizes E1 components and induced d1 ranks for one model.
pub struct SpectralWorkspace<'a> {
    model: &'a Model,
    gamma_min: i32,
    e1: HashMap<Bidegree, E1Component>,
    d1_rank: HashMap<Bidegree, usize>,
}

impl<'a> SpectralWorkspace<'a> {
    pub fn new(model: &'a Model, gamma_min: i32) -> Self {
        SpectralWorkspace {
            model,
            gamma_min,
            e1: HashMap::new(),
            d1_rank: HashMap::new(),
        }
    }

    pub fn e1(&mut self, bd: Bidegree) -> &E1Component {
        if !self.e1.contains_key(&bd) {
            let comp = self.compute_e1(bd);
            self.e1.insert(bd, comp);
        }
        &self.e1[&bd]
    }

    fn compute_e1(&self, bd: Bidegree) -> E1Component {
        let q0 = DifferentialKind::Q0;
        let (source, _, out_mat) =
            diff_matrix(self.model, q0, bd, self.gamma_min).expect("Q0 matrix");
        let (_, _, in_mat) = diff_matrix(self.model, q0, bd.shifted((-1, -1)), self.gamma_min)
            .expect("Q0 matrix");
        let kernel_dense = out_mat.kernel_basis();
        let cocycles: Vec<Col> = kernel_dense
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect()
            })
            .collect();
        let mut elim = Eliminator::new();
        let mut boundaries = Vec::new();
        for col in &in_mat.cols {
            let mut c = col.clone();
            elim.reduce(&mut c);
            if !c.is_empty() {
                boundaries.push(col.clone());
                elim.insert(c);
            }
        }
        let boundary_rank = elim.rank_so_far();
        let mut reps = Vec::new();
        for z in &cocycles {
            let mut c = z.clone();
            elim.reduce(&mut c);
            if !c.is_empty() {
                reps.push(z.clone());
                elim.insert(c);
            }
        }
        E1Component {
            basis: source,
            cocycles,
            boundary_rank,
            reps,
            boundaries,
        }
    }

    /// Induced d1 = [Q1] out of `bd`, its rank, and the E2 Betti number.
    pub fn d1(&mut self, bd: Bidegree) -> Result<D1Report> {
        let rank = self.d1_rank(bd)?;
        let rank_in = self.d1_rank(bd.shifted((-1, 3)))?;
        let matrix = self.d1_matrix(bd)?;
        let e1_dim = self.e1(bd).e1_dim();
        assert!(e1_dim >= rank + rank_in, "E2 dimension underflow at {bd:?}");
        Ok(D1Report {
            bd,
            e1_dim,
            matrix,
            rank,
            rank_in,
            e2_betti: e1_dim - rank - rank_in,
        })
    }

    fn d1_rank(&mut self, bd: Bidegree) -> Result<usize> {
        if let Some(&r) = self.d1_rank.get(&bd) {
            return Ok(r);
        }
        let mat = self.d1_matrix(bd)?;
        let mut m = SparseMat::new(usize::MAX);
        for col in mat {
            m.push_col(col);
        }
        let r = m.rank();
        self.d1_rank.insert(bd, r);
        Ok(r)
    }

    /// Matrix of d1: E1(bd) -> E1(bd + (1,-3)) in representative coordinates.
    pub fn d1_matrix(&mut self, bd: Bidegree) -> Result<Vec<Col>> {
        let target_bd = bd.shifted((1, -3));
        // make sure both components are memoized before borrowing
        self.e1(bd);
        self.e1(target_bd);
        let source = &self.e1[&bd];
        let target = &self.e1[&target_bd];
        let mut span = target.boundaries.clone();
        span.extend(target.reps.iter().cloned());
        let n_boundaries = target.boundaries.len();
        let mut cols = Vec::with_capacity(source.reps.len());
        for rep in &source.reps {
            let e = source.basis.element_from_coords(self.model, rep);
            let w = self.model.apply_diff(DifferentialKind::Q1, &e)?;
            if w.is_zero() {
                cols.push(Vec::new());
                continue;
            }
            let wcol = target
                .basis
                .coords(&w)
                .unwrap_or_else(|| panic!("Q1 image left the target component at {bd:?}"));
            let coords = coordinates_in(&span, &wcol).unwrap_or_else(|| {
                panic!("Q1 image of a Q0-cocycle is not a Q0-cocycle at {bd:?}")
            });
            let col: Col = coords
                .into_iter()
                .enumerate()
                .skip(n_boundaries)
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i - n_boundaries, c))
                .collect();
            cols.push(col);
        }
        Ok(cols)
    }
}

/// One member of the negative-degree cocycle family in a bidegree.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub label: String,
    pub element: Element,
}

/// Span data of the cocycle family inside one bidegree.
#[derive(Debug, Clone)]
pub struct FamilySpan {
    pub members: Vec<FamilyMember>,
    /// Rank of the members as elements.
    pub rank: usize,
    /// Rank of the classes, i.e. rank modulo the Q0-boundaries.
    pub class_rank: usize,
}

/// The X/Y cocycle family members landing in `bd`: `X_k(f)` and
/// `Y*_k(f) = Q0 eta~_k(f)` over x-monomials `f` (the arguments indexing the
/// negative-degree classes). Returns the members, their rank as elements,
/// and their rank as cohomology classes.
pub fn family_in_bidegree(model: &Model, bd: Bidegree, gamma_min: i32) -> Result<FamilySpan> {
    let basis = enumerate_basis(model, bd, gamma_min);
    let d = model.d() as i32;
    let k = 1 - bd.ghost;
    let mut members = Vec::new();
    // X_k(x^alpha): ghost = 1 - k, T = k + d + |alpha| + 1
    // Y*_k(x^alpha): ghost = 1 - k, T = k + d + |alpha| - 1
    if k >= 0 {
        let ax = bd.tdeg - 1 - k - d;
        let ay = bd.tdeg + 1 - k - d;
        if ax >= 0 {
            for alpha in x_monomials(model, ax) {
                let f = x_monomial_element(model, &alpha)?;
                let el = model.x_k(k as i64, &f)?;
                if !el.is_zero() {
                    members.push(FamilyMember {
                        label: family_label("X", k, model, &alpha),
                        element: el,
                    });
                }
            }
        }
        if ay >= 0 && k >= 1 {
            for alpha in x_monomials(model, ay) {
                let f = x_monomial_element(model, &alpha)?;
                let el = model.y_k_corrected(k as i64, &f)?;
                if !el.is_zero() {
                    members.push(FamilyMember {
                        label: family_label("Y*", k, model, &alpha),
                        element: el,
                    });
                }
            }
        }
    }
    let mut elem_elim = Eliminator::new();
    let mut rank = 0usize;
    let cols: Vec<Col> = members
        .iter()
        .map(|mem| {
            basis
                .coords(&mem.element)
                .unwrap_or_else(|| panic!("family member {} outside bidegree {bd:?}", mem.label))
        })
        .collect();
    for col in &cols {
        if elem_elim.offer(col) {
            rank += 1;
        }
    }
    // class rank: reduce against the Q0-boundaries first
    let (_, _, in_mat) = diff_matrix(model, DifferentialKind::Q0, bd.shifted((-1, -1)), gamma_min)?;
    let mut class_elim = Eliminator::new();
    for col in &in_mat.cols {
        class_elim.offer(col);
    }
    let boundary_rank = class_elim.rank_so_far();
    for col in &cols {
        class_elim.offer(col);
    }
    let class_rank = class_elim.rank_so_far() - boundary_rank;
    Ok(FamilySpan {
        members,
        rank,
        class_rank,
    })
}

fn family_label(kind: &str, k: i32, model: &Model, alpha: &[i32]) -> String {
    let mut f = String::new();
    for (a, &e) in alpha.iter().enumerate() {
        if e > 0 {
            if !f.is_empty() {
                f.push('*');
            }
            f.push_str(model.table().name(model.x_index(a)));
            if e > 1 {
                f.push_str(&format!("^{e}"));
            }
        }
    }
    if f.is_empty() {
        f.push('1');
    }
    format!("{kind}_{k}({f})")
}

fn x_monomials(model: &Model, total: i32) -> Vec<Vec<i32>> {
    let d = model.d();
    let mut out = Vec::new();
    let mut cur = vec![0i32; d];
    fn rec(d: usize, pos: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if pos == d - 1 {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(d, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    rec(d, 0, total, &mut cur, &mut out);
    out
}

fn x_monomial_element(model: &Model, alpha: &[i32]) -> Result<Element> {
    let mut f = Element::one(model.table());
    for (a, &e) in alpha.iter().enumerate() {
        f = f.mul(&model.gen(model.x_index(a)).pow(e as i64)?)?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_model;

    #[test]
    fn basis_examples() {
        let m = build_model(1, None).unwrap();
        // d=1, ghost=1, T=1 -> {c, gamma}
        let b = enumerate_basis(&m, Bidegree::new(1, 1), 0);
        assert_eq!(b.dim(), 2);
        let names: Vec<String> = b
            .monomials
            .iter()
            .map(|mono| {
                Element::from_monomial(m.table(), mono.clone(), BigRational::from_integer(1.into()))
                    .to_string()
            })
            .collect();
        assert!(names.contains(&"c".to_string()));
        assert!(names.contains(&"gamma".to_string()));
        // ghost=0, T=0 -> {1}
        let b0 = enumerate_basis(&m, Bidegree::new(0, 0), 0);
        assert_eq!(b0.dim(), 1);
        // ghost > T -> empty
        let be = enumerate_basis(&m, Bidegree::new(3, 2), 0);
        assert_eq!(be.dim(), 0);
    }

    #[test]
    fn exhaustive_enumeration_oracle() {
        // independent oracle: enumerate all exponent vectors directly
        let m = build_model(2, None).unwrap();
        let table = m.table();
        let bd = Bidegree::new(-1, 4);
        let fast = enumerate_basis(&m, bd, 0);
        let mut slow = 0usize;
        let n = table.len();
        // brute force over small exponent ranges
        let mut exps = vec![0i32; n];
        fn rec(
            table: &crate::superalg::GeneratorTable,
            i: usize,
            exps: &mut Vec<i32>,
            bd: Bidegree,
            count: &mut usize,
        ) {
            if i == table.len() {
                let mono_ok = exps
                    .iter()
                    .enumerate()
                    .all(|(g, &e)| !(table.parity(g).is_odd() && e > 1) && e >= 0);
                if !mono_ok {
                    return;
                }
                let ghost: i32 = exps
                    .iter()
                    .enumerate()
                    .map(|(g, &e)| e * table.ghost(g))
                    .sum();
                let t: i32 = exps
                    .iter()
                    .enumerate()
                    .filter(|&(g, _)| g != table.hbar())
                    .map(|(_, &e)| e)
                    .sum();
                let hb = exps[table.hbar()];
                if ghost == bd.ghost && t == bd.tdeg && hb == 0 {
                    *count += 1;
                }
                return;
            }
            let max = if table.parity(i).is_odd() { 1 } else { 5 };
            for e in 0..=max {
                exps[i] = e;
                rec(table, i + 1, exps, bd, count);
            }
            exps[i] = 0;
        }
        rec(table, 0, &mut exps, bd, &mut slow);
        assert_eq!(fast.dim(), slow);
    }

    #[test]
    fn q0_matrix_shifts_bidegree() {
        let m = build_model(1, None).unwrap();
        let bd = Bidegree::new(0, 2);
        let (source, target, mat) = diff_matrix(&m, DifferentialKind::Q0, bd, 0).unwrap();
        assert_eq!(source.bd, bd);
        assert_eq!(target.bd, Bidegree::new(1, 3));
        assert_eq!(mat.ncols(), source.dim());
    }

    #[test]
    fn chain_condition_at_matrix_level() {
        // M_out(bd + delta) * M_in(bd + delta) = 0 for Q0
        let m = build_model(2, None).unwrap();
        for ghost in -2..=1 {
            for t in 1..=4 {
                let bd = Bidegree::new(ghost, t);
                let (_, mid, min_mat) = diff_matrix(&m, DifferentialKind::Q0, bd, 0).unwrap();
                let (mid2, _, mout_mat) =
                    diff_matrix(&m, DifferentialKind::Q0, bd.shifted((1, 1)), 0).unwrap();
                assert_eq!(mid.dim(), mid2.dim());
                // compose: for each column of min_mat, apply mout
                for col in &min_mat.cols {
                    let mut acc: std::collections::HashMap<usize, BigRational> =
                        std::collections::HashMap::new();
                    for (row, coeff) in col {
                        for (r2, c2) in &mout_mat.cols[*row] {
                            let e = acc.entry(*r2).or_insert_with(BigRational::zero);
                            *e += coeff * c2;
                        }
                    }
                    assert!(acc.values().all(|v| v.is_zero()));
                }
            }
        }
    }

    #[test]
    fn q1_zero_on_b_beta_c_free_component() {
        // ghost 0, T <= 3 components with no b/beta/c content: pick ghost 2?
        // Simply check the matrix of Q1 out of (0, 3) columns that are free
        // of b, beta, c map to zero.
        let m = build_model(1, None).unwrap();
        let (source, _, mat) = diff_matrix(&m, DifferentialKind::Q1, Bidegree::new(0, 3), 0).unwrap();
        for (j, mono) in source.monomials.iter().enumerate() {
            let free = mono.exp(m.b_index()) == 0
                && mono.exp(m.beta_index()) == 0
                && mono.exp(m.c_index()) == 0;
            if free {
                assert!(mat.cols[j].is_empty());
            }
        }
    }

    #[test]
    fn dense_elimination_oracle_agrees() {
        // independent dense Gaussian elimination over the rationals
        fn dense_rank(cols: &[Vec<BigRational>]) -> usize {
            let mut mat: Vec<Vec<BigRational>> = cols.to_vec();
            let rows = mat.first().map(|c| c.len()).unwrap_or(0);
            let mut rank = 0;
            let mut used = vec![false; rows];
            for j in 0..mat.len() {
                // find pivot row
                let mut pivot = None;
                for r in 0..rows {
                    if !used[r] && !mat[j][r].is_zero() {
                        pivot = Some(r);
                        break;
                    }
                }
                let Some(p) = pivot else { continue };
                used[p] = true;
                rank += 1;
                let pval = mat[j][p].clone();
                for jj in (j + 1)..mat.len() {
                    if !mat[jj][p].is_zero() {
                        let factor = &mat[jj][p] / &pval;
                        for r in 0..rows {
                            let sub = &factor * &mat[j][r];
                            mat[jj][r] = &mat[jj][r] - &sub;
                        }
                    }
                }
            }
            rank
        }
        let m = build_model(2, None).unwrap();
        for (ghost, t) in [(-1, 4), (0, 3), (1, 2), (-2, 5)] {
            let (_, target, mat) =
                diff_matrix(&m, DifferentialKind::Q0, Bidegree::new(ghost, t), 0).unwrap();
            let dense: Vec<Vec<BigRational>> = mat
                .cols
                .iter()
                .map(|c| crate::matrix::to_dense(c, target.dim()))
                .collect();
            assert_eq!(mat.rank(), dense_rank(&dense), "bidegree ({ghost},{t})");
        }
    }

    #[test]
    fn negative_ghost_betti_matches_family_rank_small() {
        let m = build_model(1, None).unwrap();
        for ghost in [-1, -2] {
            for t in 2..=6 {
                let bd = Bidegree::new(ghost, t);
                let entry = betti(&m, DifferentialKind::Q0, bd, 0).unwrap();
                let span = family_in_bidegree(&m, bd, 0).unwrap();
                assert_eq!(
                    entry.betti,
                    span.class_rank,
                    "bidegree {bd:?}: betti {} vs family class rank {} ({} members)",
                    entry.betti,
                    span.class_rank,
                    span.members.len()
                );
            }
        }
    }

    #[test]
    fn e2_vanishes_small() {
        let m = build_model(1, None).unwrap();
        let mut ws = SpectralWorkspace::new(&m, 0);
        for ghost in [-1, -2] {
            for t in 2..=6 {
                let bd = Bidegree::new(ghost, t);
                let rep = ws.d1(bd).unwrap();
                assert_eq!(rep.e2_betti, 0, "E2 at {bd:?}");
            }
        }
    }

    #[test]
    fn betti_zero_matrix_both_ways() {
        // at an isolated bidegree where both differentials vanish the Betti
        // number equals the dimension; ghost=-T all-beta monomials die under
        // Q0 into... pick a tiny sanity case instead: d=1, ghost 1, T 1 has
        // {c, gamma}; Q0 c = -gamma^2, Q0 gamma = 0, image from (0,0): Q0 1 = 0.
        let m = build_model(1, None).unwrap();
        let entry = betti(&m, DifferentialKind::Q0, Bidegree::new(1, 1), 0).unwrap();
        assert_eq!(entry.dim, 2);
        assert_eq!(entry.rank_out, 1); // c -> -gamma^2
        assert_eq!(entry.kernel_dim, 1); // gamma
        assert_eq!(entry.rank_in, 0);
        assert_eq!(entry.betti, 1);
    }
}
