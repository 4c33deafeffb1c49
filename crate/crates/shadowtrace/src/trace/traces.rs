use std::sync::Arc;

use crate::algebra::{RingElement, RingMatrix};
use crate::bicat::{hcompose, hcompose_all, shadow, shadow_map, theta, theta_vector, Bimodule, ShadowGroup, ShadowMap, TwoCell};
use crate::error::{Error, Result};

use super::dual::{block_repeat, DualPair};

fn expect(cell: &Bimodule, want: &Bimodule, what: &str) -> Result<()> {
    if cell != want {
        return Err(Error::ShapeMismatch(format!("{what} does not have the expected shape")));
    }
    Ok(())
}

/// A shadow map computed by pushing representative vectors through `step`
/// and normalizing once at the end.
fn vector_map(
    dom: Arc<ShadowGroup>,
    cod: Arc<ShadowGroup>,
    step: impl Fn(Vec<RingElement>) -> Vec<RingElement> + Send + Sync + 'static,
) -> ShadowMap {
    let (d, c) = (dom.clone(), cod.clone());
    ShadowMap::new(dom, cod, move |l| c.normalize_vector(&step(d.representative_vector(l))))
}

/// The four matrices and the rotation of the trace of `f: Q ⊙ M => M ⊙ P`.
struct FiveStep {
    coev: RingMatrix,
    f: RingMatrix,
    m: Bimodule,
    pn: Bimodule,
    eval: RingMatrix,
}

impl FiveStep {
    fn run(&self, v: Vec<RingElement>) -> Vec<RingElement> {
        let x = self.coev.mul_vec(&v);
        let x = self.f.mul_vec(&x);
        let x = theta_vector(&self.m, &self.pn, &x);
        self.eval.mul_vec(&x)
    }
}

fn five_step(f: &TwoCell, w: &DualPair, q: &Bimodule, p: &Bimodule) -> Result<FiveStep> {
    let (m, n) = (w.m(), w.n());
    expect(f.dom(), &hcompose(q, m)?, "the domain of the 2-cell")?;
    expect(f.cod(), &hcompose(m, p)?, "the codomain of the 2-cell")?;
    Ok(FiveStep {
        coev: block_repeat(w.coev().matrix(), q.rank()),
        f: n.substitute(f.matrix()),
        m: m.clone(),
        pn: hcompose(p, n)?,
        eval: block_repeat(w.eval().matrix(), p.rank()),
    })
}

/// The trace of `f: Q ⊙ M => M ⊙ P` with respect to the dual pair `(M, N)`:
/// `<Q> -> <Q⊙M⊙N> -> <M⊙P⊙N> -> <P⊙N⊙M> -> <P>`.
pub fn trace(f: &TwoCell, w: &DualPair, q: &Bimodule, p: &Bimodule) -> Result<ShadowMap> {
    let fs = five_step(f, w, q, p)?;
    Ok(vector_map(shadow(q)?, shadow(p)?, move |v| fs.run(v)))
}

/// The same trace as a composite of the shadow maps of each stage; needs every
/// intermediate shadow to be computable.
pub fn trace_staged(f: &TwoCell, w: &DualPair, q: &Bimodule, p: &Bimodule) -> Result<ShadowMap> {
    let (m, n) = (w.m(), w.n());
    let fs = five_step(f, w, q, p)?;
    let qmn = hcompose_all(&[q, m, n])?;
    let mpn = hcompose_all(&[m, p, n])?;
    let pnm = hcompose_all(&[p, n, m])?;
    let s1 = shadow_map(&TwoCell::new(q, &qmn, fs.coev.clone())?)?;
    let s2 = shadow_map(&TwoCell::new(&qmn, &mpn, fs.f.clone())?)?;
    let s3 = theta(m, &fs.pn)?;
    let s4 = shadow_map(&TwoCell::new(&pnm, p, fs.eval.clone())?)?;
    let s3 = retarget(&s3, &shadow(&mpn)?, &shadow(&pnm)?)?;
    s4.after(&s3)?.after(&s2)?.after(&s1)
}

/// Views a map between shadows of equal 1-cells as one between the given handles.
fn retarget(f: &ShadowMap, dom: &Arc<ShadowGroup>, cod: &Arc<ShadowGroup>) -> Result<ShadowMap> {
    if **f.dom() != **dom || **f.cod() != **cod {
        return Err(Error::ShapeMismatch("shadow groups differ".into()));
    }
    let g = f.clone();
    Ok(ShadowMap::new(dom.clone(), cod.clone(), move |l| g.on_generator(l)))
}

/// The trace of `g: N ⊙ Q => P ⊙ N`:
/// `<Q> -> <M⊙N⊙Q> -> <M⊙P⊙N> -> <N⊙M⊙P> -> <P>`.
pub fn trace_left(g: &TwoCell, w: &DualPair, q: &Bimodule, p: &Bimodule) -> Result<ShadowMap> {
    let (m, n) = (w.m(), w.n());
    expect(g.dom(), &hcompose(n, q)?, "the domain of the 2-cell")?;
    expect(g.cod(), &hcompose(p, n)?, "the codomain of the 2-cell")?;
    let a1 = q.substitute(w.coev().matrix());
    let a2 = block_repeat(g.matrix(), m.rank());
    let mp = hcompose(m, p)?;
    let a4 = p.substitute(w.eval().matrix());
    let n = n.clone();
    Ok(vector_map(shadow(q)?, shadow(p)?, move |v| {
        let x = a1.mul_vec(&v);
        let x = a2.mul_vec(&x);
        let x = theta_vector(&mp, &n, &x);
        a4.mul_vec(&x)
    }))
}

/// `g* : Q ⊙ M => M ⊙ P` for `g: N ⊙ Q => P ⊙ N`.
pub fn dual_twocell(g: &TwoCell, w: &DualPair, q: &Bimodule, p: &Bimodule) -> Result<TwoCell> {
    let (m, n) = (w.m(), w.n());
    expect(g.dom(), &hcompose(n, q)?, "the domain of the 2-cell")?;
    expect(g.cod(), &hcompose(p, n)?, "the codomain of the 2-cell")?;
    let qm = hcompose(q, m)?;
    let a1 = qm.substitute(w.coev().matrix());
    let a2 = block_repeat(&m.substitute(g.matrix()), m.rank());
    let a3 = block_repeat(w.eval().matrix(), m.rank() * p.rank());
    TwoCell::new(&qm, &hcompose(m, p)?, &(&a3 * &a2) * &a1)
}

/// `f_* : N ⊙ Q => P ⊙ N` for `f: Q ⊙ M => M ⊙ P`, the inverse of `g ↦ g*`.
pub fn mate(f: &TwoCell, w: &DualPair, q: &Bimodule, p: &Bimodule) -> Result<TwoCell> {
    let (m, n) = (w.m(), w.n());
    expect(f.dom(), &hcompose(q, m)?, "the domain of the 2-cell")?;
    expect(f.cod(), &hcompose(m, p)?, "the codomain of the 2-cell")?;
    let b1 = block_repeat(w.coev().matrix(), n.rank() * q.rank());
    let b2 = block_repeat(&n.substitute(f.matrix()), n.rank());
    let pn = hcompose(p, n)?;
    let b3 = pn.substitute(w.eval().matrix());
    TwoCell::new(&hcompose(n, q)?, &pn, &(&b3 * &b2) * &b1)
}

/// `χ(M) = tr(id_M): <U_C> -> <U_D>`.
pub fn euler_characteristic(w: &DualPair) -> Result<ShadowMap> {
    let m = w.m();
    let uc = Bimodule::unit(m.source());
    let ud = Bimodule::unit(m.target());
    let id = TwoCell::new(&hcompose(&uc, m)?, &hcompose(m, &ud)?, RingMatrix::identity(m.target_group(), m.rank()))?;
    trace(&id, w, &uc, &ud)
}

/// The Hattori-Stallings formula: for `q = e_k c`, the class of
/// `Σ_i Σ_l F[(i,m),(k,l)] ρ_M(c)[l,i]` in each coordinate `m` of `P`.
///
/// It needs no dual pair, only that `M` is right-free.
pub fn hattori_stallings(f: &TwoCell, m: &Bimodule, q: &Bimodule, p: &Bimodule) -> Result<ShadowMap> {
    expect(f.dom(), &hcompose(q, m)?, "the domain of the 2-cell")?;
    expect(f.cod(), &hcompose(m, p)?, "the codomain of the 2-cell")?;
    let (fm, m, r, pr) = (f.matrix().clone(), m.clone(), m.rank(), p.rank());
    let dg = m.target_group().clone();
    Ok(vector_map(shadow(q)?, shadow(p)?, move |v| {
        let mut out = vec![RingElement::zero(&dg); pr];
        for (k, x) in v.iter().enumerate() {
            for (c, coef) in x.terms() {
                let rho = m.act_ref(c);
                for ((l, i), y) in rho.entries() {
                    let yc = y.scale(*coef);
                    for (mm, o) in out.iter_mut().enumerate() {
                        if let Some(fe) = fm.get_ref(i * pr + mm, k * r + l) {
                            *o = &*o + &(fe * &yc);
                        }
                    }
                }
            }
        }
        out
    }))
}

/// `η_Q: Q ⊙ M => M ⊙ N ⊙ Q ⊙ M`.
pub fn eta_q(w: &DualPair, q: &Bimodule) -> Result<TwoCell> {
    let qm = hcompose(q, w.m())?;
    let cod = hcompose_all(&[w.m(), w.n(), q, w.m()])?;
    TwoCell::new(&qm, &cod, qm.substitute(w.coev().matrix()))
}

/// `ε_P: M ⊙ P ⊙ N ⊙ M => M ⊙ P`.
pub fn eps_p(w: &DualPair, p: &Bimodule) -> Result<TwoCell> {
    let dom = hcompose_all(&[w.m(), p, w.n(), w.m()])?;
    let mp = hcompose(w.m(), p)?;
    TwoCell::new(&dom, &mp, block_repeat(w.eval().matrix(), mp.rank()))
}

/// `tr(η_Q): <Q> -> <N⊙Q⊙M>` by the shortcut `<Q> -> <Q⊙M⊙N> -θ-> <N⊙Q⊙M>`.
pub fn trace_eta(w: &DualPair, q: &Bimodule) -> Result<ShadowMap> {
    let qm = hcompose(q, w.m())?;
    let coev = block_repeat(w.coev().matrix(), q.rank());
    let nqm = hcompose(w.n(), &qm)?;
    let n = w.n().clone();
    Ok(vector_map(shadow(q)?, shadow(&nqm)?, move |v| theta_vector(&qm, &n, &coev.mul_vec(&v))))
}

/// `tr(ε_P): <M⊙P⊙N> -> <P>` by the shortcut `<M⊙P⊙N> -θ-> <P⊙N⊙M> -> <P>`.
pub fn trace_eps(w: &DualPair, p: &Bimodule) -> Result<ShadowMap> {
    let pn = hcompose(p, w.n())?;
    let mpn = hcompose(w.m(), &pn)?;
    let eval = block_repeat(w.eval().matrix(), p.rank());
    let m = w.m().clone();
    Ok(vector_map(shadow(&mpn)?, shadow(p)?, move |v| eval.mul_vec(&theta_vector(&m, &pn, &v))))
}

/// `tr(η_Q)` straight from the definition of the trace.
pub fn trace_eta_raw(w: &DualPair, q: &Bimodule) -> Result<ShadowMap> {
    let nqm = hcompose_all(&[w.n(), q, w.m()])?;
    trace(&eta_q(w, q)?, w, q, &nqm)
}

/// `tr(ε_P)` straight from the definition of the trace.
pub fn trace_eps_raw(w: &DualPair, p: &Bimodule) -> Result<ShadowMap> {
    let mpn = hcompose_all(&[w.m(), p, w.n()])?;
    trace(&eps_p(w, p)?, w, &mpn, p)
}

/// `M1 ⊙ f ⊙ M2: (M1⊙Q⊙N1) ⊙ (M1⊙L⊙M2) => (M1⊙L⊙M2) ⊙ (N2⊙P⊙M2)` for `f: Q ⊙ L => L ⊙ P`.
pub fn sandwich(w1: &DualPair, f: &TwoCell, w2: &DualPair, q: &Bimodule, l: &Bimodule, p: &Bimodule) -> Result<TwoCell> {
    let (m1, m2) = (w1.m(), w2.m());
    expect(f.dom(), &hcompose(q, l)?, "the domain of the 2-cell")?;
    expect(f.cod(), &hcompose(l, p)?, "the codomain of the 2-cell")?;
    // ε_Q ⊙ id_{L⊙M2}
    let lm2 = hcompose(l, m2)?;
    let e = lm2.substitute(eps_p(w1, q)?.matrix());
    // id_{M1} ⊙ f ⊙ id_{M2}
    let mid = block_repeat(&m2.substitute(f.matrix()), m1.rank());
    // id_{M1⊙L} ⊙ η_P
    let ml = hcompose(m1, l)?;
    let h = block_repeat(eta_q(w2, p)?.matrix(), ml.rank());
    let m1qn1 = hcompose_all(&[m1, q, w1.n()])?;
    let m1lm2 = hcompose(&ml, m2)?;
    let n2pm2 = hcompose_all(&[w2.n(), p, m2])?;
    TwoCell::new(&hcompose(&m1qn1, &m1lm2)?, &hcompose(&m1lm2, &n2pm2)?, &(&h * &mid) * &e)
}
