//! Seeded instance generators shared by the acceptance and property suites.
#![allow(dead_code)] // each test binary uses a different subset

use std::collections::BTreeMap;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homkern::cat::{self, hom_basis, AddObject, Category, MorphismExpr, ObjId};
use homkern::complex::{self, ChainMap, Complex};
use homkern::field::{FieldSpec, Scalar};
use homkern::noy::{self, NoyMorphism, NoyObject};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn scalar(&mut self, f: FieldSpec) -> Scalar {
        f.from_int(self.int(-2, 3))
    }

    pub fn add_object(&mut self, pool: &[ObjId]) -> AddObject {
        let len = self.int(1, 2) as usize;
        AddObject(
            (0..len)
                .map(|_| pool[self.int(0, pool.len() as i64 - 1) as usize])
                .collect(),
        )
    }

    /// Random block morphism with sparse-ish coefficients.
    pub fn expr<C: Category + ?Sized>(
        &mut self,
        c: &C,
        src: &AddObject,
        tgt: &AddObject,
    ) -> MorphismExpr {
        let field = c.field();
        let basis = hom_basis(c, src, tgt);
        let v: Vec<Scalar> = (0..basis.dim())
            .map(|_| {
                if self.int(0, 2) == 0 {
                    field.zero()
                } else {
                    self.scalar(field)
                }
            })
            .collect();
        basis.from_vector(field, &v).unwrap()
    }

    pub fn noy_object<C: Category + ?Sized>(&mut self, c: &C, pool: &[ObjId]) -> NoyObject {
        if self.int(0, 3) == 0 {
            NoyObject::n_image(c, self.add_object(pool))
        } else {
            let a = self.add_object(pool);
            let b = self.add_object(pool);
            let e = self.expr(c, &a, &b);
            NoyObject::new(e)
        }
    }

    /// A random morphism class between random objects of the kernel
    /// completion: a combination of hom-class representatives, sometimes
    /// shifted by an element of the denominator.
    pub fn noy_morphism<C: Category + ?Sized>(
        &mut self,
        c: &C,
        pool: &[ObjId],
    ) -> Option<NoyMorphism> {
        let f = self.noy_object(c, pool);
        let g = self.noy_object(c, pool);
        let h = noy::noy_hom(c, &f, &g).ok()?;
        let field = c.field();
        let mut rep = MorphismExpr::zero(field, f.source().clone(), g.source().clone());
        for k in 0..h.dimension() {
            let coeff = self.scalar(field);
            if coeff.is_zero() {
                continue;
            }
            let e = cat::scale_expr(c, &h.rep_expr(c, k).unwrap(), &coeff);
            rep = cat::add_exprs(c, &rep, &e).unwrap();
        }
        if self.int(0, 1) == 0 {
            // shift by something factoring through the structure map
            let through = self.expr(c, f.target(), g.source());
            let extra = cat::compose(c, &through, &f.f).unwrap();
            rep = cat::add_exprs(c, &rep, &extra).unwrap();
        }
        noy::noy_morphism(c, &f, &g, rep).ok()
    }

    /// A random morphism class out of a fixed source object.
    pub fn noy_morphism_from<C: Category + ?Sized>(
        &mut self,
        c: &C,
        source: &NoyObject,
        pool: &[ObjId],
    ) -> Option<NoyMorphism> {
        let g = self.noy_object(c, pool);
        let h = noy::noy_hom(c, source, &g).ok()?;
        let field = c.field();
        let mut rep = MorphismExpr::zero(field, source.source().clone(), g.source().clone());
        for k in 0..h.dimension() {
            let coeff = self.scalar(field);
            if coeff.is_zero() {
                continue;
            }
            let e = cat::scale_expr(c, &h.rep_expr(c, k).unwrap(), &coeff);
            rep = cat::add_exprs(c, &rep, &e).unwrap();
        }
        noy::noy_morphism(c, source, &g, rep).ok()
    }

    /// Same class, different representative.
    pub fn reshuffle_representative<C: Category + ?Sized>(
        &mut self,
        c: &C,
        alpha: &NoyMorphism,
    ) -> NoyMorphism {
        let through = self.expr(c, alpha.source.target(), alpha.target.source());
        let extra = cat::compose(c, &through, &alpha.source.f).unwrap();
        let rep = cat::add_exprs(c, &alpha.rep, &extra).unwrap();
        noy::noy_morphism(c, &alpha.source, &alpha.target, rep).unwrap()
    }

    /// Random bounded complex: a two-term complex, a cone, or a direct sum,
    /// placed at a random degree.
    pub fn complex<C: Category + ?Sized>(&mut self, c: &C, pool: &[ObjId]) -> Complex {
        let degree = self.int(-1, 1) as i32;
        match self.int(0, 2) {
            0 => {
                let a = self.add_object(pool);
                let b = self.add_object(pool);
                Complex::two_term(self.expr(c, &a, &b), degree)
            }
            1 => {
                let a = self.add_object(pool);
                let b = self.add_object(pool);
                let x = Complex::two_term(self.expr(c, &a, &b), degree);
                let a2 = self.add_object(pool);
                let b2 = self.add_object(pool);
                let y = Complex::two_term(self.expr(c, &a2, &b2), degree);
                let u = self.chain_map(c, &x, &y);
                complex::cone(c, &u).unwrap()
            }
            _ => {
                let a = self.add_object(pool);
                let b = self.add_object(pool);
                let x = Complex::two_term(self.expr(c, &a, &b), degree);
                let a2 = self.add_object(pool);
                let b2 = self.add_object(pool);
                let y = Complex::two_term(self.expr(c, &a2, &b2), degree + 1);
                x.direct_sum(c, &y)
            }
        }
    }

    /// A genuine chain map: random combination of a basis of the solution
    /// space of the chain condition.
    pub fn chain_map<C: Category + ?Sized>(&mut self, c: &C, x: &Complex, y: &Complex) -> ChainMap {
        let field = c.field();
        let kb = complex::kb_hom(c, x, y).unwrap();
        let all = kb.value.subspace.hcat(&kb.value.reps).unwrap();
        let mut v = vec![field.zero(); kb.layout.total];
        for k in 0..all.cols() {
            let coeff = self.scalar(field);
            if coeff.is_zero() {
                continue;
            }
            let col = all.col(k);
            for (i, s) in col.into_iter().enumerate() {
                let t = field.mul(&s, &coeff).unwrap();
                v[i] = field.add(&v[i], &t).unwrap();
            }
        }
        let components = kb.layout.from_vector(c, &v).unwrap();
        let u = ChainMap {
            source: x.clone(),
            target: y.clone(),
            components,
        };
        u.validate(c).unwrap();
        u
    }

    pub fn chain_map_instance<C: Category + ?Sized>(
        &mut self,
        c: &C,
        pool: &[ObjId],
    ) -> (Complex, Complex, ChainMap) {
        let x = self.complex(c, pool);
        let y = self.complex(c, pool);
        let u = self.chain_map(c, &x, &y);
        (x, y, u)
    }
}

pub fn identity_chain_map<C: Category + ?Sized>(c: &C, x: &Complex) -> ChainMap {
    let mut comps = BTreeMap::new();
    for d in x.degrees() {
        let o = x.object_at(d);
        if !o.is_empty() {
            comps.insert(d, cat::identity_expr(c, &o).unwrap());
        }
    }
    ChainMap {
        source: x.clone(),
        target: x.clone(),
        components: comps,
    }
}
