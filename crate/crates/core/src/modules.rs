//! The coefficient modules fed to the complex builders.
//!
//! A module here assigns a free module to each finite set and a restriction
//! matrix to each codimension-one inclusion; values only depend on the size
//! of the set, with subsets re-indexed along their induced order. The three
//! built-in instances are interchangeable behind the [`FiOpModule`] trait and
//! are selected at runtime by name through [`ModuleRegistry`].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::SparseIntMatrix;
use crate::setcomb::{drop_position, surjections};

/// A module over finite sets with injective maps acting contravariantly,
/// presented skeletally: one free module per size, one restriction matrix per
/// skipped position.
pub trait FiOpModule: Send + Sync {
    /// Registry identifier, e.g. `hom:2`.
    fn id(&self) -> String;

    /// Rank of the value on a set of size `n`.
    fn dim(&self, n: usize) -> usize;

    /// Ordered basis labels for the value on a set of size `n`.
    fn labels(&self, n: usize) -> Vec<String>;

    /// Matrix of the restriction along the order-preserving injection
    /// `{1..n−1} ↪ {1..n}` skipping position `p` (1-based): a
    /// `dim(n−1) × dim(n)` matrix.
    fn restriction(&self, n: usize, p: usize) -> SparseIntMatrix;
}

/// Restriction along the removal of several positions of `{1..n}`, composed
/// from codimension-one steps (largest position first, so the remaining
/// positions keep their indices).
pub fn restriction_along(module: &dyn FiOpModule, n: usize, removed: &[usize]) -> SparseIntMatrix {
    let mut positions: Vec<usize> = removed.to_vec();
    positions.sort_unstable_by(|x, y| y.cmp(x));
    let mut m = SparseIntMatrix::identity(module.dim(n));
    let mut size = n;
    for p in positions {
        debug_assert!(p >= 1 && p <= size);
        m = module
            .restriction(size, p)
            .multiply(&m)
            .expect("restriction shapes agree");
        size -= 1;
    }
    m
}

// ---------------------------------------------------------------------------
// Built-in instances
// ---------------------------------------------------------------------------

/// `b' ↦ k hom_Ω(b', a)`: the free module on surjections onto a fixed
/// codomain, with restriction killing labels that stop being surjective.
pub struct HomOmega {
    codomain: usize,
}

impl HomOmega {
    pub fn new(codomain: usize) -> Self {
        HomOmega { codomain }
    }
}

impl FiOpModule for HomOmega {
    fn id(&self) -> String {
        format!("hom:{}", self.codomain)
    }

    fn dim(&self, n: usize) -> usize {
        surjections(n, self.codomain).len()
    }

    fn labels(&self, n: usize) -> Vec<String> {
        surjections(n, self.codomain)
            .iter()
            .map(|f| f.to_string())
            .collect()
    }

    fn restriction(&self, n: usize, p: usize) -> SparseIntMatrix {
        let source = surjections(n, self.codomain);
        let target = surjections(n - 1, self.codomain);
        let mut m = SparseIntMatrix::zero(target.len(), source.len());
        for (j, f) in source.iter().enumerate() {
            if let Some(g) = drop_position(f, p) {
                let i = target.ordinal(&g).expect("restriction is enumerated");
                m.set(i, j, BigInt::one()).expect("in range");
            }
        }
        m
    }
}

/// The constant module: `k` on every set, restrictions the identity.
pub struct ConstantModule;

impl FiOpModule for ConstantModule {
    fn id(&self) -> String {
        "constant".into()
    }

    fn dim(&self, _n: usize) -> usize {
        1
    }

    fn labels(&self, _n: usize) -> Vec<String> {
        vec!["1".into()]
    }

    fn restriction(&self, _n: usize, _p: usize) -> SparseIntMatrix {
        SparseIntMatrix::identity(1)
    }
}

/// `k` on the empty set and zero elsewhere; only the identity of the empty
/// set acts nontrivially.
pub struct OneModule;

impl FiOpModule for OneModule {
    fn id(&self) -> String {
        "one".into()
    }

    fn dim(&self, n: usize) -> usize {
        usize::from(n == 0)
    }

    fn labels(&self, n: usize) -> Vec<String> {
        if n == 0 {
            vec!["*".into()]
        } else {
            Vec::new()
        }
    }

    fn restriction(&self, n: usize, _p: usize) -> SparseIntMatrix {
        SparseIntMatrix::zero(self.dim(n - 1), self.dim(n))
    }
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

type ModuleBuilder = Box<dyn Fn(Option<&str>) -> Result<Arc<dyn FiOpModule>> + Send + Sync>;

/// Name-indexed factory for module instances, used by the command line and
/// the verification suites to select coefficients at runtime.
pub struct ModuleRegistry {
    builders: BTreeMap<String, ModuleBuilder>,
}

impl ModuleRegistry {
    pub fn new() -> Self {
        ModuleRegistry {
            builders: BTreeMap::new(),
        }
    }

    /// Registry with the built-in instances: `one`, `constant`, `hom:<a>`.
    pub fn builtin() -> Self {
        let mut r = ModuleRegistry::new();
        r.register("one", |arg| {
            reject_arg("one", arg)?;
            Ok(Arc::new(OneModule))
        });
        r.register("constant", |arg| {
            reject_arg("constant", arg)?;
            Ok(Arc::new(ConstantModule))
        });
        r.register("hom", |arg| {
            let a: usize = arg
                .ok_or_else(|| Error::InvalidInput("hom needs a codomain size, e.g. hom:2".into()))?
                .parse()
                .map_err(|_| Error::InvalidInput("hom codomain must be a number".into()))?;
            Ok(Arc::new(HomOmega::new(a)))
        });
        r
    }

    pub fn register<F>(&mut self, name: &str, builder: F)
    where
        F: Fn(Option<&str>) -> Result<Arc<dyn FiOpModule>> + Send + Sync + 'static,
    {
        self.builders.insert(name.to_string(), Box::new(builder));
    }

    /// Instantiate from a spec string of the form `name` or `name:arg`.
    pub fn create(&self, spec: &str) -> Result<Arc<dyn FiOpModule>> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let builder = self.builders.get(name).ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown module '{name}'; available: {}",
                self.names().join(", ")
            ))
        })?;
        builder(arg)
    }

    pub fn names(&self) -> Vec<String> {
        self.builders.keys().cloned().collect()
    }
}

impl Default for ModuleRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

fn reject_arg(name: &str, arg: Option<&str>) -> Result<()> {
    if arg.is_some() {
        return Err(Error::InvalidInput(format!("module '{name}' takes no argument")));
    }
    Ok(())
}
