//! The Koszul-type complex of a coefficient module, its surjection
//! specialization, the restriction map whose kernel computes degree-zero
//! cohomology, the distinguished subcomplexes used in the rank recursion,
//! the null homotopy for constant coefficients, and the symmetric-group
//! action on everything.
//!
//! Degree t of the complex on a ground set of size `b` is spanned by pairs
//! (support of size b−t, coefficient basis label), the support carrying a
//! canonical orientation generator of its complement. The differential
//! removes one support element at a time, restricting the coefficient and
//! wedging the removed element into the orientation.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::{ChainMap, CochainComplex};
use crate::error::{Error, Result};
use crate::matrix::SparseIntMatrix;
use crate::modules::{FiOpModule, HomOmega};
use crate::setcomb::{
    drop_position, sort_sign, subsets_of_size_desc, surjections, wedge_insert, SubsetMask,
    Surjection,
};
use crate::Budget;

// ---------------------------------------------------------------------------
// Basis layout
// ---------------------------------------------------------------------------

/// One basis element of degree t: a support subset of size b−t together with
/// a coefficient basis index; the orientation generator of the complement is
/// implicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KoszulBasisElt {
    pub support: SubsetMask,
    pub label_index: usize,
}

/// Index bookkeeping for the complex of a module on a fixed ground set:
/// supports of each degree in decreasing-bitmask order, coefficient labels in
/// module order.
pub struct KoszulLayout {
    b: usize,
    fdim: Vec<usize>,
    supports: Vec<Vec<SubsetMask>>,
    support_pos: Vec<HashMap<u32, usize>>,
}

impl KoszulLayout {
    pub fn new(module: &dyn FiOpModule, b: usize) -> Self {
        let fdim: Vec<usize> = (0..=b).map(|s| module.dim(s)).collect();
        let ground = SubsetMask::full(b);
        let mut supports = Vec::with_capacity(b + 1);
        let mut support_pos = Vec::with_capacity(b + 1);
        for t in 0..=b {
            let list = subsets_of_size_desc(ground, b - t);
            let pos = list
                .iter()
                .enumerate()
                .map(|(i, m)| (m.bits(), i))
                .collect();
            supports.push(list);
            support_pos.push(pos);
        }
        KoszulLayout {
            b,
            fdim,
            supports,
            support_pos,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.b
    }

    pub fn dim(&self, t: usize) -> usize {
        if t > self.b {
            return 0;
        }
        self.supports[t].len() * self.fdim[self.b - t]
    }

    pub fn supports(&self, t: usize) -> &[SubsetMask] {
        &self.supports[t]
    }

    pub fn fdim_at(&self, size: usize) -> usize {
        self.fdim[size]
    }

    /// Global index of (support, label) in degree t.
    pub fn index(&self, t: usize, support: SubsetMask, label_index: usize) -> usize {
        let spos = self.support_pos[t][&support.bits()];
        spos * self.fdim[self.b - t] + label_index
    }

    /// Inverse of `index`.
    pub fn element(&self, t: usize, index: usize) -> KoszulBasisElt {
        let f = self.fdim[self.b - t];
        KoszulBasisElt {
            support: self.supports[t][index / f],
            label_index: index % f,
        }
    }

    pub fn elements(&self, t: usize) -> impl Iterator<Item = KoszulBasisElt> + '_ {
        let f = self.fdim[self.b - t];
        self.supports[t].iter().flat_map(move |&support| {
            (0..f).map(move |label_index| KoszulBasisElt {
                support,
                label_index,
            })
        })
    }
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Build the complex of `module` on a ground set of size `b` and validate
/// d∘d = 0. Returns the zero complex when every term vanishes.
pub fn build_kz(module: &dyn FiOpModule, b: usize, budget: &Budget) -> Result<CochainComplex> {
    budget.check_koszul(&module.id(), b)?;
    let layout = KoszulLayout::new(module, b);
    if (0..=b).all(|t| layout.dim(t) == 0) {
        return Ok(CochainComplex::empty());
    }
    let mut basis = Vec::with_capacity(b + 1);
    for t in 0..=b {
        let flabels: Vec<String> = module.labels(b - t);
        let labels = layout
            .supports(t)
            .iter()
            .flat_map(|s| flabels.iter().map(move |f| format!("{s}|{f}")))
            .collect();
        basis.push(labels);
    }
    let mut diffs = Vec::with_capacity(b);
    for t in 0..b {
        diffs.push(differential_matrix(module, &layout, t)?);
    }
    let complex = CochainComplex::new(0, basis, diffs)?;
    complex.validate()?;
    Ok(complex)
}

fn differential_matrix(
    module: &dyn FiOpModule,
    layout: &KoszulLayout,
    t: usize,
) -> Result<SparseIntMatrix> {
    let b = layout.ground_size();
    let n = b - t; // support size at degree t
    let fdim_src = layout.fdim_at(n);
    let fdim_dst = layout.fdim_at(n - 1);
    // column views of each codimension-one restriction, shared by all supports
    let restr_cols: Vec<Vec<Vec<(usize, BigInt)>>> = (1..=n)
        .map(|p| {
            let m = module.restriction(n, p);
            debug_assert_eq!((m.rows(), m.cols()), (fdim_dst, fdim_src));
            let mut cols = vec![Vec::new(); fdim_src];
            for (i, j, v) in m.iter() {
                cols[j].push((i, v.clone()));
            }
            cols
        })
        .collect();
    let mut triplets = Vec::new();
    for &support in layout.supports(t) {
        let complement = support.complement();
        for x in support.elements() {
            let (sign, _) = wedge_insert(x, &complement)?;
            let p = support.position_of(x).expect("x in support");
            let target_support = support.without_element(x);
            for j in 0..fdim_src {
                let col = layout.index(t, support, j);
                for (i, v) in &restr_cols[p - 1][j] {
                    let row = layout.index(t + 1, target_support, *i);
                    triplets.push((row, col, v * BigInt::from(sign)));
                }
            }
        }
    }
    SparseIntMatrix::from_triplets(layout.dim(t + 1), layout.dim(t), triplets)
}

/// The surjection-coefficient complex on `b`, the central computational
/// object. Empty when `b < a`.
pub fn build_c(b: usize, a: usize, budget: &Budget) -> Result<CochainComplex> {
    build_kz(&HomOmega::new(a), b, budget)
}

/// The map from surjections on the full ground set to the sum over all
/// codimension-one subsets of their (surviving) restrictions. Its kernel is
/// the degree-zero cohomology of the surjection complex.
pub fn restriction_map(b: usize, a: usize) -> Result<SparseIntMatrix> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput(
            "restriction map needs positive ground and codomain sizes".into(),
        ));
    }
    let source = surjections(b, a);
    let target = surjections(b - 1, a);
    let ground = SubsetMask::full(b);
    let subsets = subsets_of_size_desc(ground, b - 1);
    let mut m = SparseIntMatrix::zero(subsets.len() * target.len(), source.len());
    for (j, f) in source.iter().enumerate() {
        for (s_idx, s) in subsets.iter().enumerate() {
            let removed = s.complement().element_at(1).expect("one removed element");
            if let Some(g) = drop_position(f, removed) {
                let i = s_idx * target.len() + target.ordinal(&g).expect("enumerated");
                m.set(i, j, BigInt::one())?;
            }
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Subcomplexes
// ---------------------------------------------------------------------------

/// The families of surjection labels that generate the distinguished
/// subcomplexes. The pivot element is always the maximal element `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubcomplexKind {
    /// Supports avoiding the pivot, all labels.
    D,
    /// Pivot in the support, its fibre over y exactly the pivot.
    CY,
    /// Pivot absent, or present with value y at the pivot.
    CTildeY,
    /// Pivot absent, or present with value ≤ y at the pivot.
    FiltY,
}

impl SubcomplexKind {
    fn needs_y(self) -> bool {
        !matches!(self, SubcomplexKind::D)
    }

    fn admits(self, support: SubsetMask, f: &Surjection, pivot: usize, y: usize) -> bool {
        let has_pivot = support.contains(pivot);
        match self {
            SubcomplexKind::D => !has_pivot,
            SubcomplexKind::CY => {
                has_pivot && {
                    let pos = support.position_of(pivot).expect("pivot in support");
                    f.apply(pos) == y && f.fibre(y) == vec![pos]
                }
            }
            SubcomplexKind::CTildeY => {
                !has_pivot || {
                    let pos = support.position_of(pivot).expect("pivot in support");
                    f.apply(pos) == y
                }
            }
            SubcomplexKind::FiltY => {
                !has_pivot || {
                    let pos = support.position_of(pivot).expect("pivot in support");
                    f.apply(pos) <= y
                }
            }
        }
    }
}

/// A subcomplex of the surjection complex together with its inclusion.
pub struct Subcomplex {
    pub complex: CochainComplex,
    pub inclusion: ChainMap,
    /// For each degree, the parent indices of the selected basis elements.
    pub selected: Vec<Vec<usize>>,
}

/// Carve the subcomplex generated by one of the label families out of the
/// complex on `b` with surjection coefficients onto `a`. The inclusion into
/// the parent is validated as a chain map.
pub fn build_subcomplex(
    b: usize,
    a: usize,
    kind: SubcomplexKind,
    y: Option<usize>,
    budget: &Budget,
) -> Result<Subcomplex> {
    if !(b > a && a > 0) {
        return Err(Error::InvalidInput(format!(
            "subcomplexes are defined for b > a > 0, got ({b},{a})"
        )));
    }
    let y = match (kind.needs_y(), y) {
        (true, Some(y)) if (1..=a).contains(&y) => y,
        (true, other) => {
            return Err(Error::InvalidInput(format!(
                "kind {kind:?} needs a value y in 1..={a}, got {other:?}"
            )))
        }
        (false, None) => 0,
        (false, Some(_)) => {
            return Err(Error::InvalidInput("kind D takes no value y".into()));
        }
    };
    let parent = build_c(b, a, budget)?;
    let module = HomOmega::new(a);
    let layout = KoszulLayout::new(&module, b);
    let pivot = b;

    let mut selected: Vec<Vec<usize>> = Vec::new();
    let mut sub_basis: Vec<Vec<String>> = Vec::new();
    for t in 0..=b {
        let table = surjections(b - t, a);
        let mut sel = Vec::new();
        let mut labels = Vec::new();
        if !table.is_empty() {
            for (idx, e) in layout.elements(t).enumerate() {
                let f = table.get(e.label_index);
                if kind.admits(e.support, f, pivot, y) {
                    sel.push(idx);
                    labels.push(parent.labels(t as i64)[idx].clone());
                }
            }
        }
        selected.push(sel);
        sub_basis.push(labels);
    }

    let mut sub_diffs = Vec::with_capacity(b);
    for t in 0..b {
        let d = parent.differential(t as i64);
        sub_diffs.push(d.select(&selected[t + 1], &selected[t]));
    }
    let complex = CochainComplex::new(0, sub_basis, sub_diffs)?;
    complex.validate()?;

    let mut maps = BTreeMap::new();
    for t in 0..=b {
        let mut m = SparseIntMatrix::zero(parent.dim(t as i64), selected[t].len());
        for (sub_idx, &parent_idx) in selected[t].iter().enumerate() {
            m.set(parent_idx, sub_idx, BigInt::one())?;
        }
        maps.insert(t as i64, m);
    }
    let inclusion = ChainMap::new(maps);
    inclusion.validate(&complex, &parent)?;
    Ok(Subcomplex {
        complex,
        inclusion,
        selected,
    })
}

// ---------------------------------------------------------------------------
// Null homotopy for constant coefficients
// ---------------------------------------------------------------------------

/// The contraction h with d·h + h·d = id for the constant-coefficient
/// complex: the orientation generator of a complement containing 1 goes to
/// the generator with 1 removed, everything else to zero.
///
/// Returns h_t: degree t → degree t−1 for t in 1..=b.
pub fn null_homotopy_constant(b: usize) -> Result<BTreeMap<i64, SparseIntMatrix>> {
    let ground = SubsetMask::full(b);
    let mut out = BTreeMap::new();
    for t in 1..=b {
        let sources = subsets_of_size_desc(ground, b - t);
        let targets = subsets_of_size_desc(ground, b - t + 1);
        let target_pos: HashMap<u32, usize> = targets
            .iter()
            .enumerate()
            .map(|(i, m)| (m.bits(), i))
            .collect();
        let mut h = SparseIntMatrix::zero(targets.len(), sources.len());
        for (j, support) in sources.iter().enumerate() {
            let orientation = support.complement();
            if orientation.contains(1) {
                let bigger = support.with_element(1);
                h.set(target_pos[&bigger.bits()], j, BigInt::one())?;
            }
        }
        out.insert(t as i64, h);
    }
    Ok(out)
}

/// Check d·h + h·d = id degreewise for the constant-coefficient complex.
pub fn verify_null_homotopy(b: usize, budget: &Budget) -> Result<()> {
    if b == 0 {
        return Err(Error::InvalidInput("contraction needs b ≥ 1".into()));
    }
    let complex = build_kz(&crate::modules::ConstantModule, b, budget)?;
    let h = null_homotopy_constant(b)?;
    for t in 0..=b as i64 {
        let dim = complex.dim(t);
        let h_t = h
            .get(&t)
            .cloned()
            .unwrap_or_else(|| SparseIntMatrix::zero(complex.dim(t - 1), dim));
        let h_next = h
            .get(&(t + 1))
            .cloned()
            .unwrap_or_else(|| SparseIntMatrix::zero(dim, complex.dim(t + 1)));
        let dh = complex.differential(t - 1).multiply(&h_t)?;
        let hd = h_next.multiply(&complex.differential(t))?;
        let sum = dh.add(&hd)?;
        if sum != SparseIntMatrix::identity(dim) {
            return Err(Error::CohomologyMismatch {
                degree: t,
                expected: dim,
                found: sum.rank_exact(),
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Top-degree projection
// ---------------------------------------------------------------------------

/// The equivariant surjection onto the rank-one complex in the top degree
/// b−a: a bijective label on a size-a support maps to the sign of the word
/// (preimages of 1..a, then the complement in increasing order).
pub fn top_degree_projection(
    b: usize,
    a: usize,
    budget: &Budget,
) -> Result<(CochainComplex, ChainMap)> {
    if !(b > a && a > 0) {
        return Err(Error::InvalidInput(format!(
            "top-degree projection needs b > a > 0, got ({b},{a})"
        )));
    }
    let source = build_c(b, a, budget)?;
    let top = (b - a) as i64;
    let target = CochainComplex::single_term(top, vec!["or(a)⊗or(b)".into()]);
    let module = HomOmega::new(a);
    let layout = KoszulLayout::new(&module, b);
    let table = surjections(a, a);
    let mut m = SparseIntMatrix::zero(1, source.dim(top));
    for (idx, e) in layout.elements(b - a).enumerate() {
        let f = table.get(e.label_index);
        let mut word: Vec<usize> = (1..=a)
            .map(|i| {
                let pos = f.fibre(i)[0];
                e.support.element_at(pos).expect("position in support")
            })
            .collect();
        word.extend(e.support.complement().elements());
        m.set(0, idx, BigInt::from(sort_sign(&word)))?;
    }
    let mut maps = BTreeMap::new();
    maps.insert(top, m);
    let projection = ChainMap::new(maps);
    projection.validate(&source, &target)?;
    Ok((target, projection))
}

// ---------------------------------------------------------------------------
// Symmetric group action
// ---------------------------------------------------------------------------

/// A permutation of `{1..n}` as the array of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidInput(format!("not a permutation: {images:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn sign(&self) -> i32 {
        sort_sign(&self.images)
    }

    /// The canonical representative of a cycle type: consecutive blocks, one
    /// cycle per part.
    pub fn from_cycle_type(parts: &[usize]) -> Self {
        let n: usize = parts.iter().sum();
        let mut images: Vec<usize> = (1..=n).collect();
        let mut start = 1;
        for &len in parts {
            for offset in 0..len {
                images[start + offset - 1] = start + (offset + 1) % len;
            }
            start += len;
        }
        Permutation { images }
    }
}

/// The matrix of the two-sided action (left on values, right on the ground
/// set) on degree t of the surjection complex: a signed permutation of the
/// basis, the sign coming from the orientation factor.
pub fn action_matrix(
    b: usize,
    a: usize,
    t: usize,
    left: &Permutation,
    right: &Permutation,
) -> Result<SparseIntMatrix> {
    if left.len() != a || right.len() != b {
        return Err(Error::InvalidInput(format!(
            "action of S_{}×S_{} applied to a complex over ({b},{a})",
            left.len(),
            right.len()
        )));
    }
    let module = HomOmega::new(a);
    let layout = KoszulLayout::new(&module, b);
    let table = surjections(b - t, a);
    let dim = layout.dim(t);
    let inv = right.inverse();
    let mut m = SparseIntMatrix::zero(dim, dim);
    for (col, e) in layout.elements(t).enumerate() {
        let f = table.get(e.label_index);
        // image support: preimage of the support under the right action
        let new_support =
            SubsetMask::from_elements(e.support.elements().map(|x| inv.apply(x)), b)?;
        // relabelled surjection: a position in the new support maps through
        // the right action into the old support, then through f, then through
        // the left action
        let values: Vec<u8> = new_support
            .elements()
            .map(|u| {
                let q = e.support.position_of(right.apply(u)).expect("in support");
                left.apply(f.apply(q)) as u8
            })
            .collect();
        let g = Surjection::new(values, a)?;
        // orientation sign: images of the complement elements, sorted
        let moved: Vec<usize> = e
            .support
            .complement()
            .elements()
            .map(|x| inv.apply(x))
            .collect();
        let sign = sort_sign(&moved);
        let row = layout.index(t, new_support, table.ordinal(&g).expect("enumerated"));
        m.set(row, col, BigInt::from(sign))?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{ConstantModule, OneModule};

    fn dims(c: &CochainComplex) -> Vec<usize> {
        c.degrees().map(|t| c.dim(t)).collect()
    }

    #[test]
    fn kz_hom2_on_three_points() {
        let c = build_c(3, 2, &Budget::default()).unwrap();
        assert_eq!(dims(&c), vec![6, 6, 0, 0]);
    }

    #[test]
    fn kz_one_concentrated_at_top() {
        let c = build_kz(&OneModule, 3, &Budget::default()).unwrap();
        assert_eq!(dims(&c), vec![0, 0, 0, 1]);
        let h = c.cohomology();
        assert_eq!(h.rank(3), 1);
    }

    #[test]
    fn kz_constant_on_two_points_is_acyclic() {
        let c = build_kz(&ConstantModule, 2, &Budget::default()).unwrap();
        assert_eq!(dims(&c), vec![1, 2, 1]);
        let h = c.cohomology();
        assert!(h.ranks.values().all(|&r| r == 0));
    }

    #[test]
    fn c_of_four_three() {
        let c = build_c(4, 3, &Budget::default()).unwrap();
        assert_eq!(dims(&c), vec![36, 24, 0, 0, 0]);
        assert_eq!(c.euler_characteristic(), 12);
    }

    #[test]
    fn c_square_is_trivial_on_bijections() {
        let c = build_c(3, 3, &Budget::default()).unwrap();
        assert_eq!(dims(&c), vec![6, 0, 0, 0]);
        assert_eq!(c.cohomology().rank(0), 6);
    }

    #[test]
    fn c_empty_when_ground_too_small() {
        let c = build_c(2, 3, &Budget::default()).unwrap();
        assert_eq!(c.dim(0), 0);
        assert_eq!(dims(&c), Vec::<usize>::new());
    }

    #[test]
    fn budget_is_enforced() {
        let err = build_c(8, 2, &Budget::default()).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
        build_c(8, 2, &Budget::with_max_b(8)).unwrap();
    }

    #[test]
    fn rank_of_first_differential_by_minor_oracle() {
        // independent oracle: the 6×6 differential of the (3,2) complex has
        // vanishing determinant and a nonsingular 5×5 minor
        let c = build_c(3, 2, &Budget::default()).unwrap();
        let d0 = c.differential(0);
        assert_eq!((d0.rows(), d0.cols()), (6, 6));
        let full: Vec<usize> = (0..6).collect();
        assert!(naive_det(&d0.select(&full, &full)).is_zero());
        let mut found = false;
        'outer: for skip_r in 0..6 {
            for skip_c in 0..6 {
                let rows: Vec<usize> = (0..6).filter(|&r| r != skip_r).collect();
                let cols: Vec<usize> = (0..6).filter(|&c| c != skip_c).collect();
                if !naive_det(&d0.select(&rows, &cols)).is_zero() {
                    found = true;
                    break 'outer;
                }
            }
        }
        assert!(found, "no nonsingular 5×5 minor");
        assert_eq!(d0.rank_exact(), 5);
    }

    fn naive_det(m: &SparseIntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        let mut det = BigInt::zero();
        for c in 0..n {
            let v = m.get(0, c);
            if v.is_zero() {
                continue;
            }
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&x| x != c).collect();
            let minor = naive_det(&m.select(&rows, &cols));
            det += if c % 2 == 0 { v * minor } else { -v * minor };
        }
        det
    }

    #[test]
    fn smith_form_of_first_differential_is_all_ones() {
        let c = build_c(3, 2, &Budget::default()).unwrap();
        let report = c.differential(0).smith_normal_form();
        assert!(report.all_ones());
        assert_eq!(report.rank, 5);
    }

    #[test]
    fn restriction_map_examples() {
        let r32 = restriction_map(3, 2).unwrap();
        assert_eq!(r32.cols() - r32.rank_exact(), 1);

        let r33 = restriction_map(3, 3).unwrap();
        assert!(r33.is_zero());
        assert_eq!(r33.cols() - r33.rank_exact(), 6);

        let r23 = restriction_map(2, 3).unwrap();
        assert_eq!((r23.rows(), r23.cols()), (0, 0));
    }

    #[test]
    fn restriction_map_is_the_degree_zero_differential() {
        // all degree-0 wedge signs are +1, so the matrices agree exactly
        let c = build_c(4, 2, &Budget::default()).unwrap();
        assert_eq!(c.differential(0), restriction_map(4, 2).unwrap());
    }

    #[test]
    fn null_homotopy_small_cases() {
        for b in 1..=5 {
            verify_null_homotopy(b, &Budget::default()).unwrap();
        }
    }

    #[test]
    fn subcomplex_d_is_parent_shifted() {
        // the pivot-free part on (4,3) has the matrices of the (3,3) complex
        // one degree up
        let sub = build_subcomplex(4, 3, SubcomplexKind::D, None, &Budget::default()).unwrap();
        let smaller = build_c(3, 3, &Budget::default()).unwrap().shift(1);
        for t in 0..=4i64 {
            assert_eq!(sub.complex.dim(t), smaller.dim(t), "degree {t}");
            assert_eq!(sub.complex.differential(t), smaller.differential(t));
        }
    }

    #[test]
    fn subcomplex_cy_is_smaller_complex() {
        for y in 1..=3 {
            let sub =
                build_subcomplex(4, 3, SubcomplexKind::CY, Some(y), &Budget::default()).unwrap();
            let smaller = build_c(3, 2, &Budget::default()).unwrap();
            for t in 0..=4i64 {
                assert_eq!(sub.complex.dim(t), smaller.dim(t), "y={y} degree {t}");
                assert_eq!(sub.complex.differential(t), smaller.differential(t), "y={y}");
            }
        }
    }

    #[test]
    fn filtration_at_a_is_everything() {
        let sub =
            build_subcomplex(4, 3, SubcomplexKind::FiltY, Some(3), &Budget::default()).unwrap();
        let parent = build_c(4, 3, &Budget::default()).unwrap();
        for t in 0..=4i64 {
            assert_eq!(sub.complex.dim(t), parent.dim(t));
            assert_eq!(sub.complex.differential(t), parent.differential(t));
        }
    }

    #[test]
    fn subcomplex_rejects_bad_arguments() {
        let b = Budget::default();
        assert!(build_subcomplex(3, 3, SubcomplexKind::D, None, &b).is_err());
        assert!(build_subcomplex(4, 3, SubcomplexKind::CY, None, &b).is_err());
        assert!(build_subcomplex(4, 3, SubcomplexKind::CY, Some(4), &b).is_err());
        assert!(build_subcomplex(4, 3, SubcomplexKind::D, Some(1), &b).is_err());
    }

    #[test]
    fn top_projection_example_three_two() {
        let (_, proj) = top_degree_projection(3, 2, &Budget::default()).unwrap();
        let source = build_c(3, 2, &Budget::default()).unwrap();
        let target = CochainComplex::single_term(1, vec!["g".into()]);
        let m = proj.at(1, &source, &target);
        // the identity on {1,2} with orientation {3}: word (1,2,3), sign +1
        let module = HomOmega::new(2);
        let layout = KoszulLayout::new(&module, 3);
        let table = surjections(2, 2);
        let id2 = Surjection::identity(2);
        let supp = SubsetMask::from_elements([1, 2], 3).unwrap();
        let idx = layout.index(1, supp, table.ordinal(&id2).unwrap());
        assert_eq!(m.get(0, idx), BigInt::one());
    }

    #[test]
    fn top_projection_induces_rank_one_iso() {
        for (b, a) in [(3, 2), (4, 3), (4, 2)] {
            let source = build_c(b, a, &Budget::default()).unwrap();
            let (target, proj) = top_degree_projection(b, a, &Budget::default()).unwrap();
            let top = (b - a) as i64;
            let induced =
                crate::complex::induced_cohomology_rank(&proj, &source, &target, top).unwrap();
            assert_eq!(induced, 1, "({b},{a})");
            assert_eq!(source.cohomology().rank(top), 1);
        }
    }

    #[test]
    fn action_commutes_with_differential() {
        let (b, a) = (4, 2);
        let c = build_c(b, a, &Budget::default()).unwrap();
        for i in 1..b {
            for j in i + 1..=b {
                let tau = Permutation::transposition(b, i, j);
                let sigma = Permutation::identity(a);
                for t in 0..(b - a) {
                    let p_t = action_matrix(b, a, t, &sigma, &tau).unwrap();
                    let p_next = action_matrix(b, a, t + 1, &sigma, &tau).unwrap();
                    let lhs = p_next.multiply(&c.differential(t as i64)).unwrap();
                    let rhs = c.differential(t as i64).multiply(&p_t).unwrap();
                    assert_eq!(lhs, rhs, "τ=({i},{j}) degree {t}");
                }
            }
        }
    }

    #[test]
    fn action_composes_on_degree_zero_labels() {
        // the two-sided action on a degree-zero label is composition on both
        // sides
        let (b, a) = (3, 2);
        let sigma = Permutation::new(vec![2, 1]).unwrap();
        let tau = Permutation::new(vec![2, 3, 1]).unwrap();
        let m = action_matrix(b, a, 0, &sigma, &tau).unwrap();
        let table = surjections(b, a);
        for (col, f) in table.iter().enumerate() {
            let expected: Vec<u8> = (1..=b)
                .map(|x| sigma.apply(f.apply(tau.apply(x))) as u8)
                .collect();
            let g = Surjection::new(expected, a).unwrap();
            let row = table.ordinal(&g).unwrap();
            assert_eq!(m.get(row, col), BigInt::one());
        }
    }

    #[test]
    fn cycle_type_representatives() {
        let p = Permutation::from_cycle_type(&[3, 2]);
        assert_eq!(p.apply(1), 2);
        assert_eq!(p.apply(2), 3);
        assert_eq!(p.apply(3), 1);
        assert_eq!(p.apply(4), 5);
        assert_eq!(p.apply(5), 4);
        assert_eq!(p.sign(), -1);
    }
}
