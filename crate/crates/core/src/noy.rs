//! The kernel-completion category: objects are morphisms `f : X⁰ → X¹` of
//! the base category, and
//!
//! `hom(f, g) = φ₁⁻¹(im φ₃) / im φ₂`
//!
//! for `φ₁ = (g ∘ -)`, `φ₂ = (- ∘ f)` on `hom(X¹, Y⁰)` and `φ₃ = (- ∘ f)` on
//! `hom(X¹, Y¹)`. The kernel of a morphism class `[a] : f → g` is the object
//! `(f, a) : X⁰ → X¹ ⊕ Y⁰` with the evident projection.
//!
//! This module also computes the functors a linear functor θ induces here
//! and on complexes: `f ↦ ker θ(f)`, and per-degree homology of `θ` applied
//! to a complex.

use std::collections::{BTreeMap, HashMap};

use crate::cat::{
    self, hom_basis, AddObject, CatPresentation, Category, FunctorSpec, HomBasis, LinearFunctor,
    MonoidalCategory, MorphismExpr,
};
use crate::complex::{Complex, ChainMap};
use crate::error::Error;
use crate::field::Scalar;
use crate::matrix::{homology_mid, ExactMatrix, SubQuotient};
use crate::Result;

/// An object of the kernel completion: a morphism of the base category.
#[derive(Debug, Clone, PartialEq)]
pub struct NoyObject {
    pub f: MorphismExpr,
}

impl NoyObject {
    pub fn new(f: MorphismExpr) -> NoyObject {
        NoyObject { f }
    }

    /// The embedding of a base object: `A → 0`.
    pub fn n_image<C: Category + ?Sized>(c: &C, a: AddObject) -> NoyObject {
        NoyObject {
            f: MorphismExpr::zero(c.field(), a, AddObject::zero()),
        }
    }

    pub fn source(&self) -> &AddObject {
        &self.f.source
    }

    pub fn target(&self) -> &AddObject {
        &self.f.target
    }

    pub fn is_n_image(&self) -> bool {
        self.f.target.is_empty()
    }
}

/// A morphism class `f → g`, stored with one representative
/// `rep : X⁰ → Y⁰` together with a factorization witness `w : X¹ → Y¹`
/// satisfying `g ∘ rep = w ∘ f`.
#[derive(Debug, Clone)]
pub struct NoyMorphism {
    pub source: NoyObject,
    pub target: NoyObject,
    pub rep: MorphismExpr,
    pub witness: MorphismExpr,
}

/// The hom space of a pair of objects: a subquotient of `hom(X⁰, Y⁰)` with
/// chosen class representatives.
pub struct NoyHom {
    pub source: NoyObject,
    pub target: NoyObject,
    pub ambient: HomBasis,
    pub value: SubQuotient,
}

pub fn noy_hom<C: Category + ?Sized>(c: &C, f: &NoyObject, g: &NoyObject) -> Result<NoyHom> {
    let field = c.field();
    let x0 = f.source();
    let y0 = g.source();
    let y1 = g.target();
    let ambient = hom_basis(c, x0, y0);
    // φ₁ = (g ∘ -) : hom(X⁰, Y⁰) → hom(X⁰, Y¹)
    let (phi1, _, _) = cat::postcompose_matrix(c, &g.f, x0)?;
    // φ₂ = (- ∘ f) : hom(X¹, Y⁰) → hom(X⁰, Y⁰)
    let (phi2, _, _) = cat::precompose_matrix(c, &f.f, y0)?;
    // φ₃ = (- ∘ f) : hom(X¹, Y¹) → hom(X⁰, Y¹)
    let (phi3, _, _) = cat::precompose_matrix(c, &f.f, y1)?;
    // φ₁⁻¹(im φ₃): α-parts of ker [φ₁ | -φ₃]
    let stacked = phi1.hcat(&phi3.scale(&field.from_int(-1))?)?;
    let ker = stacked.kernel_basis();
    let numerator = ker.submatrix_rows(0..ambient.dim()).image_basis();
    let denominator = phi2.image_basis();
    let value = SubQuotient::new(ambient.dim(), &numerator, &denominator)?;
    Ok(NoyHom {
        source: f.clone(),
        target: g.clone(),
        ambient,
        value,
    })
}

impl NoyHom {
    pub fn dimension(&self) -> usize {
        self.value.dimension()
    }

    pub fn rep_expr<C: Category + ?Sized>(&self, c: &C, k: usize) -> Result<MorphismExpr> {
        self.ambient.from_vector(c.field(), &self.value.reps.col(k))
    }

    /// Is the plain morphism a valid class representative here?
    pub fn contains<C: Category + ?Sized>(&self, c: &C, a: &MorphismExpr) -> Result<bool> {
        let v = self.ambient.to_vector(c.field(), a)?;
        self.value.is_member(&v)
    }

    /// Coordinates of the class of `a` in the representative basis.
    pub fn class_coords<C: Category + ?Sized>(
        &self,
        c: &C,
        a: &MorphismExpr,
    ) -> Result<Option<Vec<Scalar>>> {
        let v = self.ambient.to_vector(c.field(), a)?;
        self.value.class_coords(&v)
    }

    pub fn is_zero_class<C: Category + ?Sized>(&self, c: &C, a: &MorphismExpr) -> Result<bool> {
        let v = self.ambient.to_vector(c.field(), a)?;
        self.value.is_zero_class(&v)
    }
}

/// Build a class `f → g` from a representative, solving for the witness.
/// Fails when `g ∘ rep` does not factor through `f`.
pub fn noy_morphism<C: Category + ?Sized>(
    c: &C,
    f: &NoyObject,
    g: &NoyObject,
    rep: MorphismExpr,
) -> Result<NoyMorphism> {
    let field = c.field();
    let (phi3, dom3, cod3) = cat::precompose_matrix(c, &f.f, g.target())?;
    let g_rep = cat::compose(c, &g.f, &rep)?;
    let v = cod3.to_vector(field, &g_rep)?;
    let Some(w) = phi3.solve(&v)? else {
        return Err(Error::ObjectMismatch(
            "representative does not define a morphism of the kernel completion".into(),
        ));
    };
    let witness = dom3.from_vector(field, &w)?;
    Ok(NoyMorphism {
        source: f.clone(),
        target: g.clone(),
        rep,
        witness,
    })
}

/// Composition of classes: representatives compose.
pub fn noy_compose<C: Category + ?Sized>(
    c: &C,
    beta: &NoyMorphism,
    alpha: &NoyMorphism,
) -> Result<NoyMorphism> {
    if beta.source.f != alpha.target.f {
        return Err(Error::ObjectMismatch("kernel-completion composition".into()));
    }
    let rep = cat::compose(c, &beta.rep, &alpha.rep)?;
    noy_morphism(c, &alpha.source, &beta.target, rep)
}

/// Are two classes `f → g` equal, i.e. does the difference of the
/// representatives factor through `f`?
pub fn noy_classes_equal<C: Category + ?Sized>(
    c: &C,
    f: &NoyObject,
    g: &NoyObject,
    a: &MorphismExpr,
    b: &MorphismExpr,
) -> Result<bool> {
    let field = c.field();
    let diff = cat::sub_exprs(c, a, b)?;
    let (phi2, _, cod) = cat::precompose_matrix(c, &f.f, g.source())?;
    let v = cod.to_vector(field, &diff)?;
    phi2.image_basis().spans(&v)
}

/// The kernel of a class `[a] : f → g`: the object `(f, a) : X⁰ → X¹ ⊕ Y⁰`
/// with projection represented by the identity of `X⁰`.
pub fn noy_kernel<C: Category + ?Sized>(
    c: &C,
    alpha: &NoyMorphism,
) -> Result<(NoyObject, NoyMorphism)> {
    let f = &alpha.source;
    let stacked = f.f.stack(&alpha.rep)?;
    let k = NoyObject::new(stacked);
    let id = cat::identity_expr(c, f.source())?;
    let proj = noy_morphism(c, &k, f, id)?;
    Ok((k, proj))
}

/// Check the kernel universal property of `(k, proj)` against a list of test
/// objects: the induced map `hom(h, k) → hom(h, f)` must be injective with
/// image exactly the classes annihilated by `alpha`.
pub fn verify_noy_kernel<C: Category + ?Sized>(
    c: &C,
    alpha: &NoyMorphism,
    k: &NoyObject,
    proj: &NoyMorphism,
    tests: &[NoyObject],
) -> Result<bool> {
    let field = c.field();
    for h in tests {
        let hom_hk = noy_hom(c, h, k)?;
        let hom_hf = noy_hom(c, h, &alpha.source)?;
        // matrix of proj ∘ - in class coordinates
        let mut cols = Vec::new();
        for p in 0..hom_hk.dimension() {
            let rep = hom_hk.rep_expr(c, p)?;
            let composed = cat::compose(c, &proj.rep, &rep)?;
            let Some(coords) = hom_hf.class_coords(c, &composed)? else {
                return Err(Error::Internal("projection of a class is not a class".into()));
            };
            cols.push(coords);
        }
        let m = ExactMatrix::from_cols(field, hom_hf.dimension(), &cols)?;
        if m.rank() != hom_hk.dimension() {
            return Ok(false); // not mono
        }
        // classes killed by alpha
        let hom_hg = noy_hom(c, h, &alpha.target)?;
        let mut killed: Vec<Vec<Scalar>> = Vec::new();
        for p in 0..hom_hf.dimension() {
            let rep = hom_hf.rep_expr(c, p)?;
            let au = cat::compose(c, &alpha.rep, &rep)?;
            let Some(coords) = hom_hg.class_coords(c, &au)? else {
                return Err(Error::Internal("composite is not a class".into()));
            };
            killed.push(coords);
        }
        let alpha_mat = ExactMatrix::from_cols(field, hom_hg.dimension(), &killed)?;
        let ann = alpha_mat.kernel_basis();
        if !m.image_basis().same_span(&ann)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tensor product of objects:
/// `X⁰ ⊗ Y⁰ → X¹ ⊗ Y⁰ ⊕ X⁰ ⊗ Y¹` with components `f ⊗ id` and `id ⊗ g`.
pub fn noy_tensor<C: MonoidalCategory + ?Sized>(
    c: &C,
    f: &NoyObject,
    g: &NoyObject,
) -> Result<NoyObject> {
    let idy = cat::identity_expr(c, g.source())?;
    let idx = cat::identity_expr(c, f.source())?;
    let top = cat::tensor_exprs(c, &f.f, &idy)?;
    let bot = cat::tensor_exprs(c, &idx, &g.f)?;
    Ok(NoyObject::new(top.stack(&bot)?))
}

/// The unit object: the N-image of the monoidal unit.
pub fn noy_unit<C: MonoidalCategory + ?Sized>(c: &C) -> NoyObject {
    NoyObject::n_image(c, AddObject::single(c.unit()))
}

// ---------------------------------------------------------------------------
// Functors induced by a linear functor
// ---------------------------------------------------------------------------

/// Value of the kernel functor on an object: a chosen basis of `ker θ(f)`
/// inside `θ(X⁰)`.
pub struct KernelFunctorValue {
    pub basis: ExactMatrix,
}

impl KernelFunctorValue {
    pub fn dimension(&self) -> usize {
        self.basis.cols()
    }
}

/// `f ↦ ker θ(f)`.
pub fn vec_theta_obj<C, F>(c: &C, th: &F, f: &NoyObject) -> Result<KernelFunctorValue>
where
    C: Category + ?Sized,
    F: LinearFunctor + ?Sized,
{
    let _ = c;
    let m = th.on_expr(&f.f)?;
    Ok(KernelFunctorValue {
        basis: m.kernel_basis(),
    })
}

/// Induced map `ker θ(f) → ker θ(g)` of a morphism class, expressed in the
/// chosen kernel bases. Well-definedness (independence of the representative)
/// is a property the test suite checks separately.
pub fn vec_theta_map<C, F>(
    c: &C,
    th: &F,
    alpha: &NoyMorphism,
    kf: &KernelFunctorValue,
    kg: &KernelFunctorValue,
) -> Result<ExactMatrix>
where
    C: Category + ?Sized,
    F: LinearFunctor + ?Sized,
{
    let _ = c;
    let a = th.on_expr(&alpha.rep)?;
    let moved = a.mul(&kf.basis)?;
    kg.basis
        .solve_matrix(&moved)?
        .ok_or_else(|| Error::Internal("image of a kernel vector left the target kernel".into()))
}

/// Graded value: one subquotient per degree, finitely supported.
pub type GradedSpaceValue = BTreeMap<i32, SubQuotient>;

pub fn graded_dims(v: &GradedSpaceValue) -> BTreeMap<i32, usize> {
    v.iter()
        .filter(|(_, s)| s.dimension() > 0)
        .map(|(d, s)| (*d, s.dimension()))
        .collect()
}

/// Per-degree homology of `θ` applied to a complex.
pub fn theta_graded<C, F>(c: &C, th: &F, x: &Complex) -> Result<GradedSpaceValue>
where
    C: Category + ?Sized,
    F: LinearFunctor + ?Sized,
{
    let mut out = BTreeMap::new();
    for d in x.lo..=x.hi {
        let incoming = th.on_expr(&x.diff_at(c, d - 1))?;
        let outgoing = th.on_expr(&x.diff_at(c, d))?;
        out.insert(d, homology_mid(&incoming, &outgoing)?);
    }
    Ok(out)
}

/// Degree-0 part of [`theta_graded`].
pub fn theta_degree0<C, F>(c: &C, th: &F, x: &Complex) -> Result<SubQuotient>
where
    C: Category + ?Sized,
    F: LinearFunctor + ?Sized,
{
    let incoming = th.on_expr(&x.diff_at(c, -1))?;
    let outgoing = th.on_expr(&x.diff_at(c, 0))?;
    homology_mid(&incoming, &outgoing)
}

/// The restriction of [`theta_degree0`] to non-negatively supported
/// complexes (the half-bounded variant is this composite by construction).
pub fn theta_degree0_plus<C, F>(c: &C, th: &F, x: &Complex) -> Result<SubQuotient>
where
    C: Category + ?Sized,
    F: LinearFunctor + ?Sized,
{
    if x.lo < 0 {
        return Err(Error::Window(format!(
            "complex supported below degree 0 (lo = {})",
            x.lo
        )));
    }
    theta_degree0(c, th, x)
}

/// Matrix of the map `H^i(θX) → H^i(θY)` induced by a chain map, in the
/// representative bases of the two subquotients.
pub fn induced_on_homology<C, F>(
    c: &C,
    th: &F,
    u: &ChainMap,
    hx: &SubQuotient,
    hy: &SubQuotient,
    degree: i32,
) -> Result<ExactMatrix>
where
    C: Category + ?Sized,
    F: LinearFunctor + ?Sized,
{
    let field = th.field();
    let m = th.on_expr(&u.component(c, degree))?;
    let mut cols = Vec::new();
    for k in 0..hx.dimension() {
        let v = hx.reps.col(k);
        let moved = m
            .mul(&ExactMatrix::from_cols(field, v.len(), &[v])?)?
            .col(0);
        let coords = hy
            .class_coords(&moved)?
            .ok_or_else(|| Error::Internal("induced homology image is not a cycle class".into()))?;
        cols.push(coords);
    }
    ExactMatrix::from_cols(field, hy.dimension(), &cols)
}

// ---------------------------------------------------------------------------
// Finite skeletons of the kernel completion
// ---------------------------------------------------------------------------

/// A user-declared finite skeleton: objects of the kernel completion with
/// chosen hom-class representatives, materialized as a presentation. The
/// `n_image` flags record which skeleton objects are in the image of the
/// embedding of the base category.
pub struct NoySkeleton {
    pub objects: Vec<NoyObject>,
    pub names: Vec<String>,
    pub n_image: Vec<bool>,
    pub presentation: CatPresentation,
    pub homs: HashMap<(usize, usize), NoyHom>,
}

pub fn noy_skeleton<C: Category + ?Sized>(
    c: &C,
    objects: Vec<(String, NoyObject)>,
) -> Result<NoySkeleton> {
    let field = c.field();
    let mut b = CatPresentation::builder("noy-skeleton", field);
    let names: Vec<String> = objects.iter().map(|(n, _)| n.clone()).collect();
    let objs: Vec<NoyObject> = objects.into_iter().map(|(_, o)| o).collect();
    let ids: Vec<usize> = names.iter().map(|n| b.object(n)).collect();
    let mut homs = HashMap::new();
    let mut basis_handles = HashMap::new();
    for (i, fi) in objs.iter().enumerate() {
        for (j, fj) in objs.iter().enumerate() {
            let h = noy_hom(c, fi, fj)?;
            for k in 0..h.dimension() {
                let m = b.basis_mor(&format!("{}>{}:{k}", names[i], names[j]), ids[i], ids[j]);
                basis_handles.insert((i, j, k), m);
            }
            homs.insert((i, j), h);
        }
    }
    // identities: the class of id_{X⁰}
    for (i, fi) in objs.iter().enumerate() {
        let h = &homs[&(i, i)];
        let id = cat::identity_expr(c, fi.source())?;
        let coords = h
            .class_coords(c, &id)?
            .ok_or_else(|| Error::Internal("identity is not a class".into()))?;
        let lc = coords
            .into_iter()
            .enumerate()
            .map(|(k, s)| (basis_handles[&(i, i, k)].idx, s))
            .collect();
        b.identity(ids[i], lc);
    }
    // structure constants: compose representatives, re-express
    for (i, fi) in objs.iter().enumerate() {
        for (j, fj) in objs.iter().enumerate() {
            for (l, fl) in objs.iter().enumerate() {
                let hij = &homs[&(i, j)];
                let hjl = &homs[&(j, l)];
                let hil = &homs[&(i, l)];
                for p in 0..hij.dimension() {
                    for q in 0..hjl.dimension() {
                        let rep_p = hij.rep_expr(c, p)?;
                        let rep_q = hjl.rep_expr(c, q)?;
                        let composed = cat::compose(c, &rep_q, &rep_p)?;
                        let coords = hil.class_coords(c, &composed)?.ok_or_else(|| {
                            Error::Internal("composite of classes is not a class".into())
                        })?;
                        let lc = coords
                            .into_iter()
                            .enumerate()
                            .map(|(k, s)| (basis_handles[&(i, l, k)].idx, s))
                            .collect();
                        b.rule(basis_handles[&(j, l, q)], basis_handles[&(i, j, p)], lc);
                    }
                }
                let _ = (fi, fj, fl);
            }
        }
    }
    let presentation = b.finish()?;
    let n_image = objs.iter().map(|o| o.is_n_image()).collect();
    Ok(NoySkeleton {
        objects: objs,
        names,
        n_image,
        presentation,
        homs,
    })
}

/// The kernel functor of θ tabulated on a skeleton: object dimensions are
/// `dim ker θ(f)` and generator images the induced kernel maps.
pub fn vec_theta_functor<C, F>(c: &C, th: &F, sk: &NoySkeleton) -> Result<FunctorSpec>
where
    C: Category + ?Sized,
    F: LinearFunctor + ?Sized,
{
    let values: Vec<KernelFunctorValue> = sk
        .objects
        .iter()
        .map(|o| vec_theta_obj(c, th, o))
        .collect::<Result<_>>()?;
    let dims = values.iter().map(|v| v.dimension()).collect();
    let mut spec = FunctorSpec::new("vec-theta", th.field(), dims);
    for i in 0..sk.objects.len() {
        for j in 0..sk.objects.len() {
            let h = &sk.homs[&(i, j)];
            for k in 0..h.dimension() {
                let rep = h.rep_expr(c, k)?;
                let alpha = noy_morphism(c, &sk.objects[i], &sk.objects[j], rep)?;
                let m = vec_theta_map(c, th, &alpha, &values[i], &values[j])?;
                spec.set_image(
                    cat::BasisMor {
                        src: i,
                        tgt: j,
                        idx: k,
                    },
                    m,
                );
            }
        }
    }
    Ok(spec)
}
