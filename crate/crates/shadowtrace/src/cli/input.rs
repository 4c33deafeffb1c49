//! Job documents. Every command reads one JSON object; unknown fields are rejected.

use schemars::JsonSchema;
use serde::Deserialize;

use crate::algebra::{group, Elem, Group, GroupHom, RingElement, RingMatrix, Word};
use crate::bicat::{Bimodule, RingObject};
use crate::error::{Error, Result};

/// A group: `{"named": "S3"}`, a multiplication table, `{"free_abelian": 2}` or a presentation.
#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// `1`, `Z/n`, `Sn`, `An`, `Dn`, `Q8`, `V4`, `Z`, `Z^n`
    Named(String),
    /// index 0 is the identity; `table[a][b]` is the index of `ab`
    Table {
        #[serde(default)]
        name: Option<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    },
    FreeAbelian(usize),
    /// relators are words like `a b a^-1 b^-1`
    Presented {
        #[serde(default)]
        name: Option<String>,
        generators: Vec<String>,
        relators: Vec<String>,
    },
}

/// A homomorphism between two groups fixed by context.
#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum HomSpec {
    Identity,
    /// everything to the identity
    Trivial,
    /// `x ↦ x^k` on an abelian group
    Power(i64),
    /// `x ↦ a x a^-1`
    Inner(String),
    /// pairs `[x, f(x)]` on a generating set
    GeneratorImages(Vec<(String, String)>),
    /// images of the standard generators, in order
    Images(Vec<String>),
    /// integer matrix between lattices, images of basis vectors in columns
    Matrix(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub elem: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub row: usize,
    pub col: usize,
    pub value: Vec<TermSpec>,
}

/// A sparse matrix of group ring elements.
#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub entries: Vec<EntrySpec>,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ActionImage {
    pub generator: String,
    pub matrix: MatrixSpec,
}

/// A right-free bimodule between a source and a target group.
#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BimoduleSpec {
    /// the ring over itself
    Unit,
    /// `D^n` with the source acting trivially
    Free(usize),
    /// `_ψ D`, rank one
    Twisted(HomSpec),
    /// a direct sum of twisted units
    Diagonal(Vec<HomSpec>),
    /// explicit action matrices over the target on source generators
    Action { rank: usize, images: Vec<ActionImage> },
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Hh0Job {
    pub group: GroupSpec,
    /// twist `φ`; classes are `x ~ h x φ(h)^-1`
    #[serde(default)]
    pub twist: Option<HomSpec>,
    /// also compute `HH_0(M_n(Z[G]))` on matrix units
    #[serde(default)]
    pub matrix_size: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct TraceJob {
    /// the ring `C`; the integers when omitted
    #[serde(default)]
    pub source: Option<GroupSpec>,
    /// the ring `D`
    pub target: GroupSpec,
    /// `M`, a `(C, D)`-bimodule
    pub m: BimoduleSpec,
    /// `Q` over `C`; the unit when omitted
    #[serde(default)]
    pub q: Option<BimoduleSpec>,
    /// `P` over `D`; the unit when omitted
    #[serde(default)]
    pub p: Option<BimoduleSpec>,
    /// matrix of `f: Q ⊙ M => M ⊙ P` over `D`
    pub f: MatrixSpec,
    /// Smith-coordinate window for infinite shadows
    #[serde(default)]
    pub window: Option<i64>,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct EulerJob {
    #[serde(default)]
    pub source: Option<GroupSpec>,
    pub target: GroupSpec,
    pub m: BimoduleSpec,
    #[serde(default)]
    pub window: Option<i64>,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct TransferJob {
    /// `C`
    pub group: GroupSpec,
    /// `A`
    pub subgroup: GroupSpec,
    /// injective `f: A -> C`
    pub hom: HomSpec,
    #[serde(default)]
    pub window: Option<i64>,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct TwistedTransferJob {
    pub group: GroupSpec,
    pub subgroup: GroupSpec,
    pub hom: HomSpec,
    /// automorphism of `A`
    pub j: HomSpec,
    /// automorphism of `C` with `k f = f j`
    pub k: HomSpec,
    #[serde(default)]
    pub window: Option<i64>,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ReidemeisterJob {
    /// `z ↦ z^d`
    Circle { d: i64 },
    /// the linear map of `R^2 / Z^2`
    Torus { matrix: Vec<Vec<i64>> },
    /// a complex of free `Z[π]`-modules with a twisted chain map
    Complex { group: GroupSpec, ranks: Vec<usize>, boundaries: Vec<MatrixSpec>, twist: HomSpec, maps: Vec<MatrixSpec> },
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct NerveJob {
    pub group: GroupSpec,
    /// `f`, applied in the last face
    pub twist: HomSpec,
    /// `g`, applied in the first face; the identity when omitted
    #[serde(default)]
    pub second_twist: Option<HomSpec>,
    /// highest level for the simplicial identity check in oracle mode
    #[serde(default)]
    pub check_level: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MoritaJob {
    /// `A` and `M_n(A)`
    Matrix { group: GroupSpec, n: usize },
    /// `_ψ A` for an automorphism `ψ`
    TwistedUnit { group: GroupSpec, hom: HomSpec },
    /// base change along an isomorphism `f: A -> C`
    BaseChange { group: GroupSpec, subgroup: GroupSpec, hom: HomSpec },
}

fn parse_word(s: &str, gens: &[String]) -> Result<Word> {
    Word::parse(s, gens)
}

pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    match spec {
        GroupSpec::Named(n) => group::named(n),
        GroupSpec::Table { name, labels, table } => Group::finite(name.as_deref().unwrap_or("G"), labels.clone(), table.clone()),
        GroupSpec::FreeAbelian(r) => Ok(Group::free_abelian(*r)),
        GroupSpec::Presented { name, generators, relators } => {
            let rels = relators.iter().map(|r| parse_word(r, generators)).collect::<Result<Vec<_>>>()?;
            Group::presented(name.as_deref().unwrap_or("G"), generators.clone(), rels)
        }
    }
}

pub fn build_hom(spec: &HomSpec, dom: &Group, cod: &Group) -> Result<GroupHom> {
    let endo = || {
        if dom == cod {
            Ok(())
        } else {
            Err(Error::ObjectMismatch("this homomorphism needs equal source and target".into()))
        }
    };
    match spec {
        HomSpec::Identity => {
            endo()?;
            Ok(GroupHom::identity(dom))
        }
        HomSpec::Trivial => Ok(GroupHom::trivial(dom, cod)),
        HomSpec::Power(k) => {
            endo()?;
            GroupHom::power_map(dom, *k)
        }
        HomSpec::Inner(a) => {
            endo()?;
            Ok(GroupHom::inner(dom, &dom.parse_elem(a)?))
        }
        HomSpec::GeneratorImages(pairs) => {
            let imgs = pairs.iter().map(|(x, y)| Ok((dom.parse_elem(x)?, cod.parse_elem(y)?))).collect::<Result<Vec<_>>>()?;
            GroupHom::from_generator_images(dom, cod, &imgs)
        }
        HomSpec::Images(ys) => {
            let imgs = ys.iter().map(|y| cod.parse_elem(y)).collect::<Result<Vec<_>>>()?;
            if dom.is_presented() {
                return GroupHom::from_presentation(dom, cod, imgs);
            }
            if imgs.len() != dom.generators().len() {
                return Err(Error::Parse(format!("{} generator images expected", dom.generators().len())));
            }
            let pairs: Vec<(Elem, Elem)> = dom.generators().iter().cloned().zip(imgs).collect();
            GroupHom::from_generator_images(dom, cod, &pairs)
        }
        HomSpec::Matrix(m) => GroupHom::from_matrix(dom, cod, m),
    }
}

pub fn build_element(terms: &[TermSpec], g: &Group) -> Result<RingElement> {
    let t = terms.iter().map(|t| Ok((g.parse_elem(&t.elem)?, t.coeff))).collect::<Result<Vec<_>>>()?;
    Ok(RingElement::from_terms(g, t))
}

pub fn build_matrix(spec: &MatrixSpec, g: &Group) -> Result<RingMatrix> {
    let mut m = RingMatrix::zero(g, spec.rows, spec.cols);
    for e in &spec.entries {
        if e.row >= spec.rows || e.col >= spec.cols {
            return Err(Error::Parse(format!("entry ({}, {}) outside a {}x{} matrix", e.row, e.col, spec.rows, spec.cols)));
        }
        m.add_to(e.row, e.col, &build_element(&e.value, g)?);
    }
    Ok(m)
}

pub fn build_bimodule(spec: &BimoduleSpec, src: &Group, tgt: &Group) -> Result<Bimodule> {
    match spec {
        BimoduleSpec::Unit => {
            if src != tgt {
                return Err(Error::ObjectMismatch("the unit needs equal source and target".into()));
            }
            Ok(Bimodule::unit(&RingObject::new(src)))
        }
        BimoduleSpec::Free(n) => {
            let images: Vec<(Elem, RingMatrix)> = src.generators().iter().map(|g| (g.clone(), RingMatrix::identity(tgt, *n))).collect();
            Bimodule::new(RingObject::new(src), RingObject::new(tgt), *n, &images)
        }
        BimoduleSpec::Twisted(h) => Ok(Bimodule::left_twisted(&build_hom(h, src, tgt)?)),
        BimoduleSpec::Diagonal(hs) => {
            let homs = hs.iter().map(|h| build_hom(h, src, tgt)).collect::<Result<Vec<_>>>()?;
            Bimodule::diagonal(src, tgt, &homs)
        }
        BimoduleSpec::Action { rank, images } => {
            let imgs =
                images.iter().map(|a| Ok((src.parse_elem(&a.generator)?, build_matrix(&a.matrix, tgt)?))).collect::<Result<Vec<_>>>()?;
            Bimodule::new(RingObject::new(src), RingObject::new(tgt), *rank, &imgs)
        }
    }
}
