//! Bounded chain complexes over a presented category: shifts, cones, weak
//! kernels, homotopy classes of chain maps, and the Koszul-signed tensor
//! product. The shift convention is `(X[n])^i = X^{i+n}` with differential
//! `(-1)^n d^{i+n}`.

use std::collections::BTreeMap;

use crate::cat::{
    self, hom_basis, AddObject, Category, HomBasis, MonoidalCategory, MorphismExpr,
};
use crate::error::Error;
use crate::field::Scalar;
use crate::matrix::{ExactMatrix, SubQuotient};
use crate::Result;

/// A bounded complex: objects in degrees `lo..=hi` and differentials
/// `d^i : X^i → X^{i+1}` for `lo <= i < hi`. Degrees outside the range are
/// zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex {
    pub lo: i32,
    pub hi: i32,
    objects: Vec<AddObject>,
    diffs: Vec<MorphismExpr>,
}

impl Complex {
    pub fn new(lo: i32, objects: Vec<AddObject>, diffs: Vec<MorphismExpr>) -> Result<Complex> {
        if objects.is_empty() {
            return Err(Error::Shape("complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != objects.len() {
            return Err(Error::Shape(
                "need one differential per adjacent degree pair".into(),
            ));
        }
        let hi = lo + objects.len() as i32 - 1;
        for (k, d) in diffs.iter().enumerate() {
            if d.source.0 != objects[k].0 || d.target.0 != objects[k + 1].0 {
                return Err(Error::Shape(format!("differential {k} endpoints mismatch")));
            }
        }
        Ok(Complex { lo, hi, objects, diffs })
    }

    /// One object placed in a single degree.
    pub fn concentrated(a: AddObject, degree: i32) -> Complex {
        Complex {
            lo: degree,
            hi: degree,
            objects: vec![a],
            diffs: Vec::new(),
        }
    }

    /// A morphism `f : X⁰ → X¹` as a two-term complex in degrees
    /// `(degree, degree + 1)`.
    pub fn two_term(f: MorphismExpr, degree: i32) -> Complex {
        Complex {
            lo: degree,
            hi: degree + 1,
            objects: vec![f.source.clone(), f.target.clone()],
            diffs: vec![f],
        }
    }

    pub fn object_at(&self, d: i32) -> AddObject {
        if d < self.lo || d > self.hi {
            AddObject::zero()
        } else {
            self.objects[(d - self.lo) as usize].clone()
        }
    }

    pub fn diff_at<C: Category + ?Sized>(&self, c: &C, d: i32) -> MorphismExpr {
        if d >= self.lo && d < self.hi {
            self.diffs[(d - self.lo) as usize].clone()
        } else {
            MorphismExpr::zero(c.field(), self.object_at(d), self.object_at(d + 1))
        }
    }

    /// Check `d ∘ d = 0` in every degree.
    pub fn validate<C: Category + ?Sized>(&self, c: &C) -> Result<()> {
        for d in self.lo..self.hi {
            let dd = cat::compose(c, &self.diff_at(c, d + 1), &self.diff_at(c, d))?;
            if !dd.is_zero() {
                return Err(Error::NotAComplex(format!("d² ≠ 0 at degree {d}")));
            }
        }
        Ok(())
    }

    /// `(X[n])^i = X^{i+n}`, differential scaled by `(-1)^n`.
    pub fn shift<C: Category + ?Sized>(&self, c: &C, n: i32) -> Complex {
        let sign = if n.rem_euclid(2) == 0 {
            c.field().one()
        } else {
            c.field().from_int(-1)
        };
        Complex {
            lo: self.lo - n,
            hi: self.hi - n,
            objects: self.objects.clone(),
            diffs: self
                .diffs
                .iter()
                .map(|d| cat::scale_expr(c, d, &sign))
                .collect(),
        }
    }

    pub fn direct_sum<C: Category + ?Sized>(&self, c: &C, other: &Complex) -> Complex {
        let lo = self.lo.min(other.lo);
        let hi = self.hi.max(other.hi);
        let field = c.field();
        let mut objects = Vec::new();
        for d in lo..=hi {
            objects.push(self.object_at(d).plus(&other.object_at(d)));
        }
        let mut diffs = Vec::new();
        for d in lo..hi {
            let a = self.diff_at(c, d);
            let b = other.diff_at(c, d);
            let mut m = MorphismExpr::zero(
                field,
                self.object_at(d).plus(&other.object_at(d)),
                self.object_at(d + 1).plus(&other.object_at(d + 1)),
            );
            let (ar, ac) = (a.target.len(), a.source.len());
            for i in 0..ar {
                for j in 0..ac {
                    m.set_block(field, i, j, a.block(i, j).clone());
                }
            }
            for i in 0..b.target.len() {
                for j in 0..b.source.len() {
                    m.set_block(field, ar + i, ac + j, b.block(i, j).clone());
                }
            }
            diffs.push(m);
        }
        Complex { lo, hi, objects, diffs }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi
    }
}

/// A degreewise morphism of complexes; the chain condition is checked by
/// [`ChainMap::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    pub components: BTreeMap<i32, MorphismExpr>,
}

impl ChainMap {
    pub fn zero(source: Complex, target: Complex) -> ChainMap {
        ChainMap {
            source,
            target,
            components: BTreeMap::new(),
        }
    }

    pub fn component<C: Category + ?Sized>(&self, c: &C, d: i32) -> MorphismExpr {
        self.components.get(&d).cloned().unwrap_or_else(|| {
            MorphismExpr::zero(c.field(), self.source.object_at(d), self.target.object_at(d))
        })
    }

    pub fn validate<C: Category + ?Sized>(&self, c: &C) -> Result<()> {
        for (&d, comp) in &self.components {
            if comp.source.0 != self.source.object_at(d).0
                || comp.target.0 != self.target.object_at(d).0
            {
                return Err(Error::Shape(format!("chain map component {d} endpoints")));
            }
        }
        let lo = self.source.lo.min(self.target.lo);
        let hi = self.source.hi.max(self.target.hi);
        for d in lo..hi {
            let lhs = cat::compose(c, &self.target.diff_at(c, d), &self.component(c, d))?;
            let rhs = cat::compose(c, &self.component(c, d + 1), &self.source.diff_at(c, d))?;
            if !cat::sub_exprs(c, &lhs, &rhs)?.is_zero() {
                return Err(Error::NotAComplex(format!("not a chain map at degree {d}")));
            }
        }
        Ok(())
    }
}

/// Layout of the graded hom space `⊕_d hom(X^d, Y^{d+shift})` as one
/// coordinate column.
pub struct GradedHomLayout {
    pub degrees: Vec<i32>,
    pub bases: Vec<HomBasis>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

pub fn graded_hom_layout<C: Category + ?Sized>(
    c: &C,
    x: &Complex,
    y: &Complex,
    shift: i32,
) -> GradedHomLayout {
    let lo = x.lo.min(y.lo - shift);
    let hi = x.hi.max(y.hi - shift);
    let mut degrees = Vec::new();
    let mut bases = Vec::new();
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for d in lo..=hi {
        let b = hom_basis(c, &x.object_at(d), &y.object_at(d + shift));
        degrees.push(d);
        offsets.push(total);
        total += b.dim();
        bases.push(b);
    }
    GradedHomLayout { degrees, bases, offsets, total }
}

impl GradedHomLayout {
    pub fn index_of(&self, d: i32) -> Option<usize> {
        self.degrees.iter().position(|&x| x == d)
    }

    pub fn to_vector<C: Category + ?Sized>(
        &self,
        c: &C,
        m: &BTreeMap<i32, MorphismExpr>,
    ) -> Result<Vec<Scalar>> {
        let field = c.field();
        let mut v = vec![field.zero(); self.total];
        for (&d, comp) in m {
            if comp.is_zero() {
                continue;
            }
            let k = self
                .index_of(d)
                .ok_or_else(|| Error::Window(format!("degree {d} outside layout")))?;
            let w = self.bases[k].to_vector(field, comp)?;
            for (i, s) in w.into_iter().enumerate() {
                v[self.offsets[k] + i] = s;
            }
        }
        Ok(v)
    }

    pub fn from_vector<C: Category + ?Sized>(
        &self,
        c: &C,
        v: &[Scalar],
    ) -> Result<BTreeMap<i32, MorphismExpr>> {
        let field = c.field();
        let mut out = BTreeMap::new();
        for (k, &d) in self.degrees.iter().enumerate() {
            let dim = self.bases[k].dim();
            if dim == 0 {
                continue;
            }
            let slice = &v[self.offsets[k]..self.offsets[k] + dim];
            let e = self.bases[k].from_vector(field, slice)?;
            if !e.is_zero() {
                out.insert(d, e);
            }
        }
        Ok(out)
    }
}

/// Matrix of the chain-map constraint
/// `u ↦ (d_Y ∘ u^d - u^{d+1} ∘ d_X)_d` on the degree-0 graded hom space.
fn chain_constraint_matrix<C: Category + ?Sized>(
    c: &C,
    x: &Complex,
    y: &Complex,
    dom: &GradedHomLayout,
) -> Result<ExactMatrix> {
    let field = c.field();
    let cod = graded_hom_layout(c, x, y, 1);
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(dom.total);
    for (k, &d) in dom.degrees.iter().enumerate() {
        for p in 0..dom.bases[k].dim() {
            let u = dom.bases[k].basis_expr(field, p);
            let mut comps: BTreeMap<i32, MorphismExpr> = BTreeMap::new();
            let a = cat::compose(c, &y.diff_at(c, d), &u)?;
            if !a.is_zero() {
                comps.insert(d, a);
            }
            let b = cat::compose(c, &u, &x.diff_at(c, d - 1))?;
            if !b.is_zero() {
                let neg = cat::scale_expr(c, &b, &field.from_int(-1));
                let entry = match comps.remove(&(d - 1)) {
                    Some(prev) => cat::add_exprs(c, &prev, &neg)?,
                    None => neg,
                };
                comps.insert(d - 1, entry);
            }
            cols.push(cod.to_vector(c, &comps)?);
        }
    }
    ExactMatrix::from_cols(field, cod.total, &cols)
}

/// Matrix of the homotopy boundary `h ↦ d_Y ∘ h + h ∘ d_X` from
/// `⊕_d hom(X^d, Y^{d-1})` to the degree-0 graded hom space.
fn homotopy_boundary_matrix<C: Category + ?Sized>(
    c: &C,
    x: &Complex,
    y: &Complex,
    cod: &GradedHomLayout,
) -> Result<ExactMatrix> {
    let field = c.field();
    let dom = graded_hom_layout(c, x, y, -1);
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(dom.total);
    for (k, &d) in dom.degrees.iter().enumerate() {
        for p in 0..dom.bases[k].dim() {
            let h = dom.bases[k].basis_expr(field, p);
            let mut comps: BTreeMap<i32, MorphismExpr> = BTreeMap::new();
            let a = cat::compose(c, &y.diff_at(c, d - 1), &h)?;
            if !a.is_zero() {
                comps.insert(d, a);
            }
            let b = cat::compose(c, &h, &x.diff_at(c, d - 1))?;
            if !b.is_zero() {
                let entry = match comps.remove(&(d - 1)) {
                    Some(prev) => cat::add_exprs(c, &prev, &b)?,
                    None => b,
                };
                comps.insert(d - 1, entry);
            }
            cols.push(cod.to_vector(c, &comps)?);
        }
    }
    ExactMatrix::from_cols(field, cod.total, &cols)
}

/// The homotopy classes of chain maps `X → Y`: numerator = solutions of the
/// chain condition, denominator = homotopy boundaries, both inside
/// `⊕_d hom(X^d, Y^d)`.
pub struct KbHom {
    pub layout: GradedHomLayout,
    pub value: SubQuotient,
}

impl KbHom {
    pub fn dimension(&self) -> usize {
        self.value.dimension()
    }

    pub fn class_rep<C: Category + ?Sized>(
        &self,
        c: &C,
        x: &Complex,
        y: &Complex,
        k: usize,
    ) -> Result<ChainMap> {
        let v = self.value.reps.col(k);
        Ok(ChainMap {
            source: x.clone(),
            target: y.clone(),
            components: self.layout.from_vector(c, &v)?,
        })
    }
}

pub fn kb_hom<C: Category + ?Sized>(c: &C, x: &Complex, y: &Complex) -> Result<KbHom> {
    let layout = graded_hom_layout(c, x, y, 0);
    let constraint = chain_constraint_matrix(c, x, y, &layout)?;
    let chain_maps = constraint.kernel_basis();
    let boundaries = homotopy_boundary_matrix(c, x, y, &layout)?;
    let value = SubQuotient::new(layout.total, &chain_maps, &boundaries.image_basis())?;
    Ok(KbHom { layout, value })
}

/// Is the chain map nullhomotopic?
pub fn is_nullhomotopic<C: Category + ?Sized>(c: &C, u: &ChainMap) -> Result<bool> {
    let layout = graded_hom_layout(c, &u.source, &u.target, 0);
    let v = layout.to_vector(c, &u.components)?;
    let boundaries = homotopy_boundary_matrix(c, &u.source, &u.target, &layout)?;
    boundaries.image_basis().spans(&v)
}

/// The mapping cone: `Cone(u)^i = X^{i+1} ⊕ Y^i` with differential
/// `(x, y) ↦ (-d_X x, u x + d_Y y)`. Validates `d² = 0` as a sign trap.
pub fn cone<C: Category + ?Sized>(c: &C, u: &ChainMap) -> Result<Complex> {
    let field = c.field();
    let x = &u.source;
    let y = &u.target;
    let lo = (x.lo - 1).min(y.lo);
    let hi = (x.hi - 1).max(y.hi);
    let mut objects = Vec::new();
    for d in lo..=hi {
        objects.push(x.object_at(d + 1).plus(&y.object_at(d)));
    }
    let mut diffs = Vec::new();
    for d in lo..hi {
        let src = x.object_at(d + 1).plus(&y.object_at(d));
        let tgt = x.object_at(d + 2).plus(&y.object_at(d + 1));
        let mut m = MorphismExpr::zero(field, src, tgt);
        let neg = field.from_int(-1);
        let xs = x.object_at(d + 1).len();
        let xs2 = x.object_at(d + 2).len();
        let dx = x.diff_at(c, d + 1);
        for i in 0..dx.target.len() {
            for j in 0..dx.source.len() {
                m.set_block(field, i, j, cat::lincomb_scale(field, dx.block(i, j), &neg));
            }
        }
        let uc = u.component(c, d + 1);
        for i in 0..uc.target.len() {
            for j in 0..uc.source.len() {
                m.set_block(field, xs2 + i, j, uc.block(i, j).clone());
            }
        }
        let dy = y.diff_at(c, d);
        for i in 0..dy.target.len() {
            for j in 0..dy.source.len() {
                m.set_block(field, xs2 + i, xs + j, dy.block(i, j).clone());
            }
        }
        diffs.push(m);
    }
    let cone = Complex { lo, hi, objects, diffs };
    cone.validate(c)
        .map_err(|_| Error::Internal("cone differential does not square to zero".into()))?;
    Ok(cone)
}

/// Weak kernel of `u : X → Y` in the homotopy category: `Cone(u)[-1]`
/// together with the projection onto `X`.
pub fn weak_kernel<C: Category + ?Sized>(c: &C, u: &ChainMap) -> Result<(Complex, ChainMap)> {
    let cn = cone(c, u)?;
    let k = cn.shift(c, -1); // K^i = X^i ⊕ Y^{i-1}
    let x = &u.source;
    let field = c.field();
    let mut components = BTreeMap::new();
    for d in k.lo..=k.hi {
        let src = k.object_at(d);
        let tgt = x.object_at(d);
        if tgt.is_empty() {
            continue;
        }
        let mut m = MorphismExpr::zero(field, src, tgt.clone());
        // the X^d summand sits first in K^d
        for i in 0..tgt.len() {
            m.set_block(field, i, i, c.identity(tgt.0[i])?);
        }
        components.insert(d, m);
    }
    let proj = ChainMap {
        source: k.clone(),
        target: x.clone(),
        components,
    };
    proj.validate(c)?;
    Ok((k, proj))
}

/// Koszul-signed tensor product of complexes:
/// `(X ⊗ Y)^i = ⊕_{a+b=i} X^a ⊗ Y^b`, `d(x ⊗ y) = dx ⊗ y + (-1)^a x ⊗ dy`.
/// `d² = 0` is revalidated after construction as a sign trap.
pub fn tensor_complexes<C: MonoidalCategory + ?Sized>(
    c: &C,
    x: &Complex,
    y: &Complex,
) -> Result<Complex> {
    let field = c.field();
    let lo = x.lo + y.lo;
    let hi = x.hi + y.hi;
    let summands = |i: i32| -> Vec<(i32, i32)> {
        let mut v = Vec::new();
        for a in x.lo..=x.hi {
            let b = i - a;
            if b >= y.lo && b <= y.hi {
                v.push((a, b));
            }
        }
        v
    };
    let mut objects = Vec::new();
    for i in lo..=hi {
        let mut acc = AddObject::zero();
        for (a, b) in summands(i) {
            acc = acc.plus(&cat::tensor_add_objects(c, &x.object_at(a), &y.object_at(b))?);
        }
        objects.push(acc);
    }
    let part_len = |a: i32, b: i32| x.object_at(a).len() * y.object_at(b).len();
    let offset = |parts: &[(i32, i32)], a: i32, b: i32| -> Option<usize> {
        let mut off = 0usize;
        for &(pa, pb) in parts {
            if (pa, pb) == (a, b) {
                return Some(off);
            }
            off += part_len(pa, pb);
        }
        None
    };
    let mut diffs = Vec::new();
    for i in lo..hi {
        let src = objects[(i - lo) as usize].clone();
        let tgt = objects[(i + 1 - lo) as usize].clone();
        let mut m = MorphismExpr::zero(field, src, tgt);
        let src_parts = summands(i);
        let tgt_parts = summands(i + 1);
        for &(a, b) in &src_parts {
            let dx = x.diff_at(c, a);
            if !dx.is_zero() {
                let idy = cat::identity_expr(c, &y.object_at(b))?;
                let t = cat::tensor_exprs(c, &dx, &idy)?;
                if let (Some(so), Some(to)) =
                    (offset(&src_parts, a, b), offset(&tgt_parts, a + 1, b))
                {
                    for bi in 0..t.target.len() {
                        for bj in 0..t.source.len() {
                            let merged =
                                cat::lincomb_add(field, m.block(to + bi, so + bj), t.block(bi, bj));
                            m.set_block(field, to + bi, so + bj, merged);
                        }
                    }
                }
            }
            let dy = y.diff_at(c, b);
            if !dy.is_zero() {
                let idx = cat::identity_expr(c, &x.object_at(a))?;
                let t = cat::tensor_exprs(c, &idx, &dy)?;
                let sign = if a.rem_euclid(2) == 0 {
                    field.one()
                } else {
                    field.from_int(-1)
                };
                let t = cat::scale_expr(c, &t, &sign);
                if let (Some(so), Some(to)) =
                    (offset(&src_parts, a, b), offset(&tgt_parts, a, b + 1))
                {
                    for bi in 0..t.target.len() {
                        for bj in 0..t.source.len() {
                            let merged =
                                cat::lincomb_add(field, m.block(to + bi, so + bj), t.block(bi, bj));
                            m.set_block(field, to + bi, so + bj, merged);
                        }
                    }
                }
            }
        }
        diffs.push(m);
    }
    let out = Complex { lo, hi, objects, diffs };
    out.validate(c)
        .map_err(|_| Error::Internal("tensor differential does not square to zero".into()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;
    use crate::field::FieldSpec;

    fn dual_numbers_x() -> (crate::cat::CatPresentation, MorphismExpr) {
        let c = algebras::dual_numbers(FieldSpec::Rationals).unwrap();
        let x = c.find_basis("x").unwrap();
        let e = MorphismExpr::from_basis(&c, x);
        (c, e)
    }

    fn identity_chain_map<C: Category + ?Sized>(c: &C, x: &Complex) -> ChainMap {
        let mut comps = BTreeMap::new();
        for d in x.degrees() {
            let o = x.object_at(d);
            if !o.is_empty() {
                comps.insert(d, cat::identity_expr(c, &o).unwrap());
            }
        }
        ChainMap { source: x.clone(), target: x.clone(), components: comps }
    }

    #[test]
    fn kb_hom_contains_identity() {
        let (c, x) = dual_numbers_x();
        let cx = Complex::two_term(x, 0);
        cx.validate(&c).unwrap();
        let h = kb_hom(&c, &cx, &cx).unwrap();
        let id = identity_chain_map(&c, &cx);
        id.validate(&c).unwrap();
        let v = h.layout.to_vector(&c, &id.components).unwrap();
        assert!(h.value.is_member(&v).unwrap());
        assert!(!h.value.is_zero_class(&v).unwrap());
    }

    #[test]
    fn kb_hom_two_term_to_point_is_one_dimensional() {
        // chain maps (R →x R) → R[0] are all of hom(R, R); homotopies give
        // the ideal x ∘ hom(R, R); dimension 2 - 1 = 1
        let (c, x) = dual_numbers_x();
        let cx = Complex::two_term(x, 0);
        let r = cx.object_at(0);
        let pt = Complex::concentrated(r, 0);
        let h = kb_hom(&c, &cx, &pt).unwrap();
        assert_eq!(h.dimension(), 1);
    }

    #[test]
    fn kb_hom_disjoint_supports_is_zero() {
        let (c, x) = dual_numbers_x();
        let r = x.source.clone();
        let pt = Complex::concentrated(r.clone(), 0);
        let shifted = pt.shift(&c, -1); // concentrated in degree 1
        let h = kb_hom(&c, &pt, &shifted).unwrap();
        assert_eq!(h.dimension(), 0);
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let (c, x) = dual_numbers_x();
        let cx = Complex::two_term(x, 0);
        let id = identity_chain_map(&c, &cx);
        let cn = cone(&c, &id).unwrap();
        let idc = identity_chain_map(&c, &cn);
        let h = kb_hom(&c, &cn, &cn).unwrap();
        let v = h.layout.to_vector(&c, &idc.components).unwrap();
        assert!(h.value.is_zero_class(&v).unwrap());
        assert!(is_nullhomotopic(&c, &idc).unwrap());
    }

    #[test]
    fn cone_of_zero_is_sum_of_shift_and_target() {
        let (c, x) = dual_numbers_x();
        let cx = Complex::two_term(x.clone(), 0);
        let cy = Complex::two_term(x, 0);
        let z = ChainMap::zero(cx.clone(), cy.clone());
        let cn = cone(&c, &z).unwrap();
        let expected = cx.shift(&c, 1).direct_sum(&c, &cy);
        for d in cn.degrees() {
            assert_eq!(cn.object_at(d).0.len(), expected.object_at(d).0.len());
        }
    }

    #[test]
    fn weak_kernel_projection_annihilates_up_to_homotopy() {
        let (c, x) = dual_numbers_x();
        let cx = Complex::two_term(x.clone(), 0);
        let pt = Complex::concentrated(x.source.clone(), 0);
        let u = {
            let mut comps = BTreeMap::new();
            comps.insert(0, cat::identity_expr(&c, &cx.object_at(0)).unwrap());
            ChainMap { source: cx.clone(), target: pt, components: comps }
        };
        u.validate(&c).unwrap();
        let (k, proj) = weak_kernel(&c, &u).unwrap();
        k.validate(&c).unwrap();
        proj.validate(&c).unwrap();
        let mut comps = BTreeMap::new();
        for d in k.degrees() {
            let comp = cat::compose(&c, &u.component(&c, d), &proj.component(&c, d)).unwrap();
            if !comp.is_zero() {
                comps.insert(d, comp);
            }
        }
        let composite = ChainMap {
            source: k.clone(),
            target: u.target.clone(),
            components: comps,
        };
        assert!(is_nullhomotopic(&c, &composite).unwrap());
    }

    #[test]
    fn tensor_with_unit_point_keeps_complex() {
        let f = FieldSpec::Rationals;
        let c = algebras::dual_numbers_monoidal(f).unwrap();
        let x = MorphismExpr::from_basis(&c, c.find_basis("x").unwrap());
        let cx = Complex::two_term(x, 0);
        let unit = Complex::concentrated(AddObject::single(c.unit()), 0);
        let t = tensor_complexes(&c, &cx, &unit).unwrap();
        assert_eq!((t.lo, t.hi), (0, 1));
        assert_eq!(t.object_at(0).0, cx.object_at(0).0);
        let h = kb_hom(&c, &t, &cx).unwrap();
        assert!(h.dimension() >= 1);
    }

    #[test]
    fn tensor_square_signs_check_out() {
        // (R →x R) ⊗ (R →x R): three-term complex, middle of rank 2; the
        // construction's own d² trap exercises the Koszul sign
        let f = FieldSpec::Rationals;
        let c = algebras::dual_numbers_monoidal(f).unwrap();
        let x = MorphismExpr::from_basis(&c, c.find_basis("x").unwrap());
        let cx = Complex::two_term(x, 0);
        let t = tensor_complexes(&c, &cx, &cx).unwrap();
        assert_eq!((t.lo, t.hi), (0, 2));
        assert_eq!(t.object_at(1).0.len(), 2);
        t.validate(&c).unwrap();
    }
}
