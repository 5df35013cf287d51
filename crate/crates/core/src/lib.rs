//! Exact-arithmetic Koszul complexes over the surjection category.
//!
//! The library builds the cochain complexes attached to modules over the
//! category of finite sets and injections (restricted to a skeleton), computes
//! their integral cohomology with exact sparse linear algebra, and exposes the
//! symmetric-group character bookkeeping needed to identify the cohomology as
//! a representation. Everything is integer or rational arithmetic; there is no
//! floating point anywhere.

pub mod characters;
pub mod complex;
pub mod cosimp;
pub mod error;
pub mod koszul;
pub mod matrix;
pub mod modules;
pub mod perm;
pub mod rk;
pub mod setcomb;
pub mod verify;

pub use error::{Error, Result};

/// Size budgets guarding the combinatorial builders.
///
/// Dimensions grow factorially; the defaults keep every suite comfortably
/// inside desk-scale runtimes and can be raised explicitly.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Cap on `b` for surjection coefficients with codomain ≥ 2.
    pub max_b_general: usize,
    /// Cap on `b` for the small coefficient modules (constant, one, hom:1).
    pub max_b_small: usize,
    /// Cap on the ground-set size of ordered-partition complexes.
    pub max_ground: usize,
    /// Largest matrix dimension submitted to Smith normal form.
    pub snf_limit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_b_general: 7,
            max_b_small: 8,
            max_ground: 7,
            snf_limit: 1200,
        }
    }
}

impl Budget {
    /// A budget admitting `b` everywhere (never below the defaults).
    pub fn with_max_b(b: usize) -> Self {
        let d = Budget::default();
        Budget {
            max_b_general: d.max_b_general.max(b),
            max_b_small: d.max_b_small.max(b),
            max_ground: d.max_ground.max(b),
            ..d
        }
    }

    fn check(&self, what: &str, requested: usize, allowed: usize) -> Result<()> {
        if requested > allowed {
            return Err(Error::Budget {
                what: what.to_string(),
                requested,
                allowed,
            });
        }
        Ok(())
    }

    /// Gate for Koszul-type builders over a given coefficient module.
    pub fn check_koszul(&self, module_id: &str, b: usize) -> Result<()> {
        let small = matches!(module_id, "one" | "constant" | "hom:0" | "hom:1");
        let allowed = if small {
            self.max_b_small
        } else {
            self.max_b_general
        };
        self.check(&format!("Koszul complex of {module_id}"), b, allowed)
    }

    /// Gate for ordered-partition ground sets.
    pub fn check_ground(&self, size: usize) -> Result<()> {
        self.check("ordered-partition complex", size, self.max_ground)
    }

    /// Gate for Smith normal form certification.
    pub fn check_snf(&self, rows: usize, cols: usize) -> Result<()> {
        self.check("Smith normal form", rows.max(cols), self.snf_limit)
    }
}
