use crate::algebra::{Group, RingMatrix};
use crate::bicat::{Bimodule, RingObject};
use crate::error::{Error, Result};

/// A finite full subcategory of free right modules `A^r`; `hom(r, s)` is the
/// space of `s x r` matrices over the base ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Ringoid {
    base: RingObject,
    objects: Vec<usize>,
}

/// Ranks `0..=max_rank`.
pub fn free_module_skeleton(a: &RingObject, max_rank: usize) -> Result<Ringoid> {
    if max_rank == 0 {
        return Err(Error::DimensionMismatch("a skeleton needs max_rank at least 1".into()));
    }
    Ringoid::new(a, (0..=max_rank).collect())
}

impl Ringoid {
    pub fn new(base: &RingObject, mut objects: Vec<usize>) -> Result<Ringoid> {
        objects.sort_unstable();
        objects.dedup();
        if objects.is_empty() {
            return Err(Error::DimensionMismatch("a ringoid needs an object".into()));
        }
        Ok(Ringoid { base: base.clone(), objects })
    }

    pub fn base(&self) -> &RingObject {
        &self.base
    }

    pub fn group(&self) -> &Group {
        &self.base.group
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn contains(&self, r: usize) -> bool {
        self.objects.binary_search(&r).is_ok()
    }

    pub fn max_rank(&self) -> usize {
        *self.objects.last().unwrap()
    }

    pub fn has_base_object(&self) -> bool {
        self.contains(1)
    }

    fn check(&self, r: usize) -> Result<()> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("rank {r} is not an object")))
        }
    }

    /// `(rows, cols)` of a morphism `r -> s`.
    pub fn hom_shape(&self, r: usize, s: usize) -> Result<(usize, usize)> {
        self.check(r)?;
        self.check(s)?;
        Ok((s, r))
    }

    pub fn identity(&self, r: usize) -> Result<RingMatrix> {
        self.check(r)?;
        Ok(RingMatrix::identity(self.group(), r))
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &RingMatrix, f: &RingMatrix) -> Result<RingMatrix> {
        self.check(f.cols())?;
        self.check(f.rows())?;
        self.check(g.rows())?;
        g.try_mul(f)
    }
}

/// The bimodule `hom(r, s ⊗ Q)` over a ringoid, i.e. `(Mod^c_A)_{- ⊗ Q}`
/// restricted to the skeleton.
///
/// An element of `hom(r, s ⊗ Q)` is an `(s q) x r` matrix; morphisms `α` act on
/// the left through `α ⊗ Q` and on the right by precomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct RingoidBimodule {
    over: Ringoid,
    twist: Bimodule,
}

impl RingoidBimodule {
    pub fn untwisted(r: &Ringoid) -> RingoidBimodule {
        RingoidBimodule { over: r.clone(), twist: Bimodule::unit(r.base()) }
    }

    pub fn twisted(r: &Ringoid, q: &Bimodule) -> Result<RingoidBimodule> {
        if q.source() != r.base() || q.target() != r.base() {
            return Err(Error::ObjectMismatch("the twist must be an endo-1-cell of the base".into()));
        }
        Ok(RingoidBimodule { over: r.clone(), twist: q.clone() })
    }

    pub fn over(&self) -> &Ringoid {
        &self.over
    }

    pub fn twist(&self) -> &Bimodule {
        &self.twist
    }

    /// Shape of elements of `hom(r, s ⊗ Q)`.
    pub fn shape(&self, r: usize, s: usize) -> Result<(usize, usize)> {
        let (rows, cols) = self.over.hom_shape(r, s)?;
        Ok((rows * self.twist.rank(), cols))
    }

    /// `α ⊗ Q` for a morphism `α`.
    pub fn functor_on(&self, alpha: &RingMatrix) -> RingMatrix {
        self.twist.substitute(alpha)
    }

    /// `(α ⊗ Q) ∘ x`.
    pub fn left_act(&self, alpha: &RingMatrix, x: &RingMatrix) -> Result<RingMatrix> {
        self.functor_on(alpha).try_mul(x)
    }

    /// `x ∘ β`.
    pub fn right_act(&self, x: &RingMatrix, beta: &RingMatrix) -> Result<RingMatrix> {
        x.try_mul(beta)
    }
}
