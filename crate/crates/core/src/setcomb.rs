//! Finite-set combinatorics: subsets as bitmasks, surjections, ordered
//! partitions, orientation signs and the refinement order.
//!
//! Elements of a ground set of size `b` are the 1-based integers `1..=b`;
//! a subset is a bitmask with bit `i-1` standing for element `i`. Every
//! subset inherits the total order of the ground set, and re-indexing along
//! the unique order-preserving bijection onto `{1..k}` is used whenever a
//! subset has to be treated as a ground set in its own right.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Hard cap on ground-set size; the combinatorics explodes long before this.
pub const MAX_GROUND: usize = 16;

// ---------------------------------------------------------------------------
// SubsetMask
// ---------------------------------------------------------------------------

/// A subset of the ground set `{1..b}`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u32,
    ground_size: u8,
}

impl SubsetMask {
    pub fn new(bits: u32, ground_size: usize) -> Result<Self> {
        if ground_size > MAX_GROUND {
            return Err(Error::InvalidInput(format!(
                "ground size {ground_size} exceeds cap {MAX_GROUND}"
            )));
        }
        if bits & !low_mask(ground_size) != 0 {
            return Err(Error::InvalidInput(format!(
                "mask {bits:#b} has bits outside ground set of size {ground_size}"
            )));
        }
        Ok(SubsetMask {
            bits,
            ground_size: ground_size as u8,
        })
    }

    pub fn empty(ground_size: usize) -> Self {
        SubsetMask::new(0, ground_size).expect("ground size within cap")
    }

    pub fn full(ground_size: usize) -> Self {
        SubsetMask::new(low_mask(ground_size), ground_size).expect("ground size within cap")
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I, ground_size: usize) -> Result<Self> {
        let mut bits = 0u32;
        for e in elems {
            if e == 0 || e > ground_size {
                return Err(Error::InvalidInput(format!(
                    "element {e} outside ground set of size {ground_size}"
                )));
            }
            bits |= 1 << (e - 1);
        }
        SubsetMask::new(bits, ground_size)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size as usize
    }

    pub fn cardinality(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.ground_size() && self.bits & (1 << (element - 1)) != 0
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        self.ground_size == other.ground_size && self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(self.ground_size, other.ground_size);
        SubsetMask {
            bits: self.bits | other.bits,
            ground_size: self.ground_size,
        }
    }

    pub fn intersection(&self, other: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(self.ground_size, other.ground_size);
        SubsetMask {
            bits: self.bits & other.bits,
            ground_size: self.ground_size,
        }
    }

    /// Complement inside the ground set.
    pub fn complement(&self) -> SubsetMask {
        SubsetMask {
            bits: !self.bits & low_mask(self.ground_size()),
            ground_size: self.ground_size,
        }
    }

    pub fn with_element(&self, element: usize) -> SubsetMask {
        debug_assert!(element >= 1 && element <= self.ground_size());
        SubsetMask {
            bits: self.bits | (1 << (element - 1)),
            ground_size: self.ground_size,
        }
    }

    pub fn without_element(&self, element: usize) -> SubsetMask {
        debug_assert!(element >= 1 && element <= self.ground_size());
        SubsetMask {
            bits: self.bits & !(1 << (element - 1)),
            ground_size: self.ground_size,
        }
    }

    /// Elements in increasing order (1-based).
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        let ground = self.ground_size();
        (1..=ground).filter(move |e| self.contains(*e))
    }

    /// Position (1-based) of `element` in the induced order of the subset.
    pub fn position_of(&self, element: usize) -> Option<usize> {
        if !self.contains(element) {
            return None;
        }
        let below = self.bits & low_mask(element - 1);
        Some(below.count_ones() as usize + 1)
    }

    /// Element at 1-based `position` in the induced order.
    pub fn element_at(&self, position: usize) -> Option<usize> {
        self.elements().nth(position.checked_sub(1)?)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}⊆[{}]", self.ground_size)
    }
}

fn low_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

/// All subsets of `ground` of cardinality `k`, in decreasing bitmask order.
///
/// This order is the canonical basis order for everything downstream.
pub fn subsets_of_size_desc(ground: SubsetMask, k: usize) -> Vec<SubsetMask> {
    let mut out: Vec<SubsetMask> = submasks(ground)
        .filter(|m| m.cardinality() == k)
        .collect();
    out.sort_by(|a, b| b.bits.cmp(&a.bits));
    out
}

/// All submasks of `ground` (including empty and full), increasing bit order.
pub fn submasks(ground: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let bits = ground.bits;
    let ground_size = ground.ground_size;
    // standard subset-of-a-mask walk
    let mut current: Option<u32> = Some(0);
    std::iter::from_fn(move || {
        let c = current?;
        current = if c == bits {
            None
        } else {
            Some((c.wrapping_sub(bits)) & bits)
        };
        Some(SubsetMask {
            bits: c,
            ground_size,
        })
    })
}

// ---------------------------------------------------------------------------
// Surjection
// ---------------------------------------------------------------------------

/// A surjective map `{1..b} ↠ {1..a}`, stored as its value array.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surjection {
    values: Vec<u8>,
    codomain_size: u8,
}

impl Surjection {
    pub fn new(values: Vec<u8>, codomain_size: usize) -> Result<Self> {
        let mut seen = vec![false; codomain_size];
        for &v in &values {
            if v == 0 || v as usize > codomain_size {
                return Err(Error::InvalidInput(format!(
                    "value {v} outside codomain of size {codomain_size}"
                )));
            }
            seen[v as usize - 1] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput(format!(
                "map {values:?} is not onto {{1..{codomain_size}}}"
            )));
        }
        Ok(Surjection {
            values,
            codomain_size: codomain_size as u8,
        })
    }

    pub fn identity(n: usize) -> Self {
        Surjection {
            values: (1..=n as u8).collect(),
            codomain_size: n as u8,
        }
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size as usize
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Value at 1-based position.
    pub fn apply(&self, position: usize) -> usize {
        self.values[position - 1] as usize
    }

    /// The fibre over `value`, as positions of the domain.
    pub fn fibre(&self, value: usize) -> Vec<usize> {
        (1..=self.domain_size())
            .filter(|&p| self.apply(p) == value)
            .collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.domain_size() == self.codomain_size()
    }
}

impl fmt::Display for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}↠{}", self.codomain_size)
    }
}

/// All surjections `{1..b} ↠ {1..a}` in lexicographic order of value arrays.
///
/// Empty when no surjection exists; `(0,0)` yields the single empty map.
pub fn enumerate_surjections(b: usize, a: usize) -> Vec<Surjection> {
    if a > b {
        return Vec::new();
    }
    if a == 0 {
        return if b == 0 {
            vec![Surjection {
                values: Vec::new(),
                codomain_size: 0,
            }]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut values = vec![0u8; b];
    fn rec(values: &mut Vec<u8>, pos: usize, covered: u32, b: usize, a: usize, out: &mut Vec<Surjection>) {
        if pos == b {
            if covered == (1u32 << a) - 1 {
                out.push(Surjection {
                    values: values.clone(),
                    codomain_size: a as u8,
                });
            }
            return;
        }
        let missing = a - (covered.count_ones() as usize);
        if missing > b - pos {
            return;
        }
        for v in 1..=a as u8 {
            values[pos] = v;
            rec(values, pos + 1, covered | (1 << (v - 1)), b, a, out);
        }
    }
    rec(&mut values, 0, 0, b, a, &mut out);
    out
}

/// Enumerated surjections together with the ordinal lookup index.
pub struct SurjTable {
    list: Vec<Surjection>,
    index: HashMap<Vec<u8>, usize>,
}

impl SurjTable {
    pub fn new(b: usize, a: usize) -> Self {
        let list = enumerate_surjections(b, a);
        let index = list
            .iter()
            .enumerate()
            .map(|(i, s)| (s.values.to_vec(), i))
            .collect();
        SurjTable { list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, ordinal: usize) -> &Surjection {
        &self.list[ordinal]
    }

    pub fn ordinal(&self, f: &Surjection) -> Option<usize> {
        self.index.get(f.values()).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Surjection> {
        self.list.iter()
    }
}

/// Shared surjection tables, filled on first request and read-only afterwards.
pub fn surjections(b: usize, a: usize) -> Arc<SurjTable> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), Arc<SurjTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("cache lock").get(&(b, a)) {
        return Arc::clone(t);
    }
    let table = Arc::new(SurjTable::new(b, a));
    let mut w = cache.write().expect("cache lock");
    Arc::clone(w.entry((b, a)).or_insert(table))
}

/// Restrict `f` to the subset `s` of its domain, re-indexed along the
/// order-preserving bijection `s ≅ {1..|s|}`. Returns `None` when the
/// restriction is no longer surjective.
pub fn restrict_surjection(f: &Surjection, s: &SubsetMask) -> Result<Option<Surjection>> {
    if s.ground_size() != f.domain_size() {
        return Err(Error::InvalidInput(format!(
            "mask over ground of size {} does not match domain of size {}",
            s.ground_size(),
            f.domain_size()
        )));
    }
    let values: Vec<u8> = s.elements().map(|e| f.values[e - 1]).collect();
    let a = f.codomain_size();
    let mut seen = 0u32;
    for &v in &values {
        seen |= 1 << (v - 1);
    }
    if a > 0 && seen != (1u32 << a) - 1 {
        return Ok(None);
    }
    if a == 0 && !values.is_empty() {
        return Ok(None);
    }
    Ok(Some(Surjection {
        values,
        codomain_size: f.codomain_size,
    }))
}

/// Drop the 1-based `position` from the domain of `f` (a codimension-one
/// restriction). Returns `None` when the result is not surjective.
pub fn drop_position(f: &Surjection, position: usize) -> Option<Surjection> {
    let removed = f.values[position - 1];
    if !f.values.iter().enumerate().any(|(i, &v)| v == removed && i != position - 1) {
        return None;
    }
    let mut values = f.values.clone();
    values.remove(position - 1);
    Some(Surjection {
        values,
        codomain_size: f.codomain_size,
    })
}

// ---------------------------------------------------------------------------
// Orientation
// ---------------------------------------------------------------------------

/// An integer multiple of the canonical wedge generator ω(S).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientationElt {
    pub support: SubsetMask,
    pub coefficient: i64,
}

impl OrientationElt {
    pub fn generator(support: SubsetMask) -> Self {
        OrientationElt {
            support,
            coefficient: 1,
        }
    }

    /// Wedge `x ∧ (coefficient · ω(S))`, re-expressed on ω(S ∪ {x}).
    pub fn wedge(self, x: usize) -> Result<OrientationElt> {
        let (sign, support) = wedge_insert(x, &self.support)?;
        Ok(OrientationElt {
            support,
            coefficient: self.coefficient * sign as i64,
        })
    }
}

/// Express `x ∧ ω(s)` as `sign · ω(s ∪ {x})`.
///
/// The sign counts the elements of `s` below `x` that `x` has to move past.
pub fn wedge_insert(x: usize, s: &SubsetMask) -> Result<(i32, SubsetMask)> {
    if x == 0 || x > s.ground_size() {
        return Err(Error::InvalidInput(format!(
            "element {x} outside ground set of size {}",
            s.ground_size()
        )));
    }
    if s.contains(x) {
        return Err(Error::InvalidInput(format!(
            "element {x} already in support {s}"
        )));
    }
    let below = (s.bits & low_mask(x - 1)).count_ones();
    let sign = if below % 2 == 0 { 1 } else { -1 };
    Ok((sign, s.with_element(x)))
}

/// Parity sign of the permutation sorting `seq` (distinct entries) increasingly.
pub fn sort_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// Ordered partitions
// ---------------------------------------------------------------------------

/// An ordered partition of a ground subset into nonempty disjoint blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    blocks: Vec<SubsetMask>,
    ground: SubsetMask,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<SubsetMask>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidInput(
                "ordered partition needs at least one block".into(),
            ));
        }
        let ground_size = blocks[0].ground_size();
        let mut union = SubsetMask::empty(ground_size);
        for b in &blocks {
            if b.ground_size() != ground_size {
                return Err(Error::InvalidInput("blocks over different ground sets".into()));
            }
            if b.is_empty() {
                return Err(Error::InvalidInput("empty block in ordered partition".into()));
            }
            if !union.intersection(b).is_empty() {
                return Err(Error::InvalidInput("blocks are not disjoint".into()));
            }
            union = union.union(b);
        }
        Ok(OrderedPartition {
            blocks,
            ground: union,
        })
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block at 0-based index.
    pub fn block(&self, i: usize) -> &SubsetMask {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    /// The union of the blocks.
    pub fn ground(&self) -> SubsetMask {
        self.ground
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All ordered partitions of `x` into `t` nonempty blocks, in a fixed
/// deterministic order (first block ranges over nonempty submasks in
/// increasing bitmask order, then recursively).
///
/// `t = 0` yields the empty block list exactly when `x` is empty.
pub fn enumerate_ordered_partitions(x: SubsetMask, t: usize) -> Vec<OrderedPartition> {
    let mut out = Vec::new();
    let mut acc: Vec<SubsetMask> = Vec::new();
    fn rec(rest: SubsetMask, t: usize, acc: &mut Vec<SubsetMask>, out: &mut Vec<OrderedPartition>) {
        if t == 0 {
            if rest.is_empty() {
                out.push(OrderedPartition {
                    blocks: acc.clone(),
                    ground: union_of(acc, rest.ground_size()),
                });
            }
            return;
        }
        if rest.cardinality() < t {
            return;
        }
        for u in submasks(rest) {
            if u.is_empty() {
                continue;
            }
            acc.push(u);
            let remaining = SubsetMask {
                bits: rest.bits & !u.bits,
                ground_size: rest.ground_size,
            };
            rec(remaining, t - 1, acc, out);
            acc.pop();
        }
    }
    rec(x, t, &mut acc, &mut out);
    out
}

fn union_of(blocks: &[SubsetMask], ground_size: usize) -> SubsetMask {
    let mut u = SubsetMask::empty(ground_size);
    for b in blocks {
        u = u.union(b);
    }
    u
}

/// Whether `q ≤ p` in the refinement order: some order-preserving surjection
/// of block indices assembles consecutive runs of `q`-blocks into `p`-blocks.
pub fn refinement_leq(q: &OrderedPartition, p: &OrderedPartition) -> Result<bool> {
    if q.ground() != p.ground() {
        return Err(Error::InvalidInput(format!(
            "partitions over different ground sets: {} vs {}",
            q.ground(),
            p.ground()
        )));
    }
    if q.len() < p.len() {
        return Ok(false);
    }
    // Order preservation forces each p-block to be a consecutive run of
    // q-blocks, so a greedy scan decides the question.
    let mut qi = 0;
    for pb in p.blocks() {
        let mut acc = SubsetMask::empty(pb.ground_size());
        while acc != *pb {
            if qi >= q.len() {
                return Ok(false);
            }
            let qb = q.block(qi);
            if !qb.is_subset_of(pb) {
                return Ok(false);
            }
            acc = acc.union(qb);
            qi += 1;
        }
    }
    Ok(qi == q.len())
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Stirling numbers of the second kind by the standard recursion.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    if n == 0 {
        return BigUint::one();
    }
    if k == 0 {
        return BigUint::zero();
    }
    let mut prev: Vec<BigUint> = vec![BigUint::zero(); k + 1];
    prev[0] = BigUint::one();
    for i in 1..=n {
        let mut curr = vec![BigUint::zero(); k + 1];
        for j in 1..=k.min(i) {
            curr[j] = &prev[j - 1] + &prev[j] * BigUint::from(j);
        }
        prev = curr;
    }
    prev[k].clone()
}

/// `|hom_Ω(b, a)| = a! · S(b, a)`.
pub fn surjection_count(b: usize, a: usize) -> BigUint {
    factorial(a) * stirling2(b, a)
}
