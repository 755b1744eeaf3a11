//! Additive sieves and Grothendieck topologies on a finite skeleton.
//!
//! A sieve on `X` assigns to every skeleton object `Y` a subspace of
//! `hom(Y, X)` closed under precomposition. A topology is a family of
//! covering sieves per object containing the maximal sieve, stable under
//! pullback and satisfying the local-character axiom. Exhaustive sieve
//! enumeration works over prime fields, where each hom space carries
//! finitely many subspaces; over the rationals the lattice can be infinite
//! and enumeration refuses loudly.

use std::collections::BTreeSet;

use crate::cat::{self, hom_basis, AddObject, BasisMor, Category, FunctorSpec, LinearFunctor, MorphismExpr, ObjId};
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;
use crate::noy::NoySkeleton;
use crate::Result;

/// A subfunctor of `hom(-, root)`: one subspace basis per skeleton object.
#[derive(Debug, Clone)]
pub struct Sieve {
    pub root: ObjId,
    pub components: Vec<ExactMatrix>,
}

impl Sieve {
    pub fn zero<C: Category + ?Sized>(c: &C, root: ObjId) -> Sieve {
        let components = (0..c.object_count())
            .map(|y| ExactMatrix::zeros(c.field(), c.hom_dim(y, root), 0))
            .collect();
        Sieve { root, components }
    }

    pub fn maximal<C: Category + ?Sized>(c: &C, root: ObjId) -> Sieve {
        let components = (0..c.object_count())
            .map(|y| ExactMatrix::identity(c.field(), c.hom_dim(y, root)))
            .collect();
        Sieve { root, components }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|m| m.cols()).collect()
    }

    pub fn is_maximal(&self) -> bool {
        self.components.iter().all(|m| m.cols() == m.rows())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|m| m.cols() == 0)
    }

    pub fn contains(&self, other: &Sieve) -> Result<bool> {
        for (a, b) in self.components.iter().zip(&other.components) {
            if !a.contains_span(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same(&self, other: &Sieve) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn intersect(&self, other: &Sieve) -> Result<Sieve> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.span_intersection(b))
            .collect::<Result<_>>()?;
        Ok(Sieve {
            root: self.root,
            components,
        })
    }

    /// Closure under precomposition with every basis morphism.
    pub fn is_closed<C: Category + ?Sized>(&self, c: &C) -> Result<bool> {
        for y in 0..c.object_count() {
            let sy = &self.components[y];
            if sy.cols() == 0 {
                continue;
            }
            for z in 0..c.object_count() {
                for idx in 0..c.hom_dim(z, y) {
                    let h = MorphismExpr::from_basis(c, BasisMor { src: z, tgt: y, idx });
                    let (pre, _, _) = cat::precompose_matrix(c, &h, &AddObject::single(self.root))?;
                    let moved = pre.mul(sy)?;
                    for k in 0..moved.cols() {
                        if !self.components[z].spans(&moved.col(k))? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// A deterministic key: canonical spans rendered per component.
    fn sort_key(&self) -> (Vec<usize>, String) {
        let dims = self.dims();
        let mut s = String::new();
        for m in &self.components {
            s.push_str(&format!("{}", m.span_canonical()));
            s.push('|');
        }
        (dims, s)
    }

    /// Human-readable description in terms of basis morphism names.
    pub fn describe<C: Category + ?Sized>(&self, c: &C) -> String {
        if self.is_maximal() {
            return "maximal".into();
        }
        if self.is_zero() {
            return "zero".into();
        }
        let mut parts = Vec::new();
        for (y, m) in self.components.iter().enumerate() {
            if m.cols() == 0 {
                continue;
            }
            let basis = hom_basis(c, &AddObject::single(y), &AddObject::single(self.root));
            let mut gens = Vec::new();
            for k in 0..m.cols() {
                let col = m.col(k);
                let mut terms = Vec::new();
                for (pos, s) in col.iter().enumerate() {
                    if !s.is_zero() {
                        let (_, _, bidx) = basis.entries[pos];
                        let name = c.basis_name(BasisMor { src: y, tgt: self.root, idx: bidx });
                        if *s == c.field().one() {
                            terms.push(name);
                        } else {
                            terms.push(format!("{s}·{name}"));
                        }
                    }
                }
                gens.push(terms.join("+"));
            }
            parts.push(format!("{}: span{{{}}}", c.object_name(y), gens.join(", ")));
        }
        parts.join("; ")
    }
}

/// Smallest precomposition-closed family containing the generators
/// (morphisms into the root given as coordinate vectors at their source).
pub fn sieve_closure<C: Category + ?Sized>(
    c: &C,
    root: ObjId,
    generators: &[(ObjId, Vec<Scalar>)],
) -> Result<Sieve> {
    let field = c.field();
    let mut components: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); c.object_count()];
    for (y, v) in generators {
        if v.len() != c.hom_dim(*y, root) {
            return Err(Error::ObjectMismatch("sieve generator target".into()));
        }
        components[*y].push(v.clone());
    }
    // fixpoint: push generators along every basis morphism
    loop {
        let mut changed = false;
        for y in 0..c.object_count() {
            if components[y].is_empty() {
                continue;
            }
            let current = ExactMatrix::from_cols(field, c.hom_dim(y, root), &components[y])?;
            for z in 0..c.object_count() {
                for idx in 0..c.hom_dim(z, y) {
                    let h = MorphismExpr::from_basis(c, BasisMor { src: z, tgt: y, idx });
                    let (pre, _, _) = cat::precompose_matrix(c, &h, &AddObject::single(root))?;
                    let moved = pre.mul(&current)?;
                    for k in 0..moved.cols() {
                        let v = moved.col(k);
                        if v.iter().all(|s| s.is_zero()) {
                            continue;
                        }
                        let existing =
                            ExactMatrix::from_cols(field, c.hom_dim(z, root), &components[z])?;
                        if !existing.spans(&v)? {
                            components[z].push(v);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let components = components
        .iter()
        .enumerate()
        .map(|(y, cols)| {
            Ok(ExactMatrix::from_cols(field, c.hom_dim(y, root), cols)?.image_basis())
        })
        .collect::<Result<_>>()?;
    Ok(Sieve { root, components })
}

/// Pullback of a sieve along `h : Y → root`, given as a coordinate vector:
/// the component at `Z` is `{g : h ∘ g ∈ S(Z)}`.
pub fn pullback_sieve<C: Category + ?Sized>(
    c: &C,
    s: &Sieve,
    y: ObjId,
    h: &[Scalar],
) -> Result<Sieve> {
    let field = c.field();
    let basis = hom_basis(c, &AddObject::single(y), &AddObject::single(s.root));
    let h_expr = basis.from_vector(field, h)?;
    let mut components = Vec::with_capacity(c.object_count());
    for z in 0..c.object_count() {
        let (post, _, _) = cat::postcompose_matrix(c, &h_expr, &AddObject::single(z))?;
        // preimage of span(S(Z)) under post: first block of ker [post | -S]
        let sz = &s.components[z];
        let stacked = post.hcat(&sz.scale(&field.from_int(-1))?)?;
        let ker = stacked.kernel_basis();
        let pre = ker.submatrix_rows(0..c.hom_dim(z, y)).image_basis();
        components.push(pre);
    }
    Ok(Sieve { root: y, components })
}

fn all_vectors(field: FieldSpec, dim: usize) -> Result<Vec<Vec<Scalar>>> {
    let FieldSpec::Prime(p) = field else {
        return Err(Error::Unsupported(
            "vector enumeration needs a prime field".into(),
        ));
    };
    let mut out = Vec::new();
    let total = (p as usize).checked_pow(dim as u32).ok_or_else(|| {
        Error::LatticeLimit(format!("p^{dim} overflows"))
    })?;
    for code in 0..total {
        let mut v = Vec::with_capacity(dim);
        let mut rest = code;
        for _ in 0..dim {
            v.push(field.from_int((rest % p as usize) as i64));
            rest /= p as usize;
        }
        out.push(v);
    }
    Ok(out)
}

/// All subspaces of `k^dim` over a prime field, as canonical bases.
fn all_subspaces(field: FieldSpec, dim: usize, limit: usize) -> Result<Vec<ExactMatrix>> {
    let vectors = all_vectors(field, dim)?;
    let mut found: Vec<ExactMatrix> = vec![ExactMatrix::zeros(field, dim, 0)];
    let mut frontier: Vec<ExactMatrix> = found.clone();
    while let Some(space) = frontier.pop() {
        for v in &vectors {
            if v.iter().all(|s| s.is_zero()) || space.spans(v)? {
                continue;
            }
            let bigger = space
                .hcat(&ExactMatrix::from_cols(field, dim, std::slice::from_ref(v))?)?
                .image_basis()
                .span_canonical();
            if found.iter().any(|m| m == &bigger) {
                continue;
            }
            if found.len() >= limit {
                return Err(Error::LatticeLimit(format!(
                    "more than {limit} subspaces in one hom component"
                )));
            }
            found.push(bigger.clone());
            frontier.push(bigger);
        }
    }
    found.sort_by_key(|m| (m.cols(), format!("{m}")));
    Ok(found)
}

/// The full sieve lattice of one root object, deterministically ordered.
pub fn enumerate_sieves<C: Category + ?Sized>(
    c: &C,
    root: ObjId,
    limit: usize,
) -> Result<Vec<Sieve>> {
    let field = c.field();
    let n = c.object_count();
    let mut per_object: Vec<Vec<ExactMatrix>> = Vec::with_capacity(n);
    let mut combos = 1usize;
    for y in 0..n {
        let subs = all_subspaces(field, c.hom_dim(y, root), limit)?;
        combos = combos.saturating_mul(subs.len());
        per_object.push(subs);
    }
    if combos > limit {
        return Err(Error::LatticeLimit(format!(
            "{combos} candidate sieve tuples exceed the limit {limit}"
        )));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let candidate = Sieve {
            root,
            components: idx
                .iter()
                .enumerate()
                .map(|(y, &i)| per_object[y][i].clone())
                .collect(),
        };
        if candidate.is_closed(c)? {
            out.push(candidate);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == n {
                out.sort_by_key(|s| s.sort_key());
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < per_object[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Sieve lattices for every root object of the skeleton.
pub struct SiteLattice {
    pub sieves: Vec<Vec<Sieve>>,
}

impl SiteLattice {
    pub fn build<C: Category + ?Sized>(c: &C, limit: usize) -> Result<SiteLattice> {
        let sieves = (0..c.object_count())
            .map(|x| enumerate_sieves(c, x, limit))
            .collect::<Result<_>>()?;
        Ok(SiteLattice { sieves })
    }

    pub fn find(&self, s: &Sieve) -> Result<Option<usize>> {
        for (i, t) in self.sieves[s.root].iter().enumerate() {
            if s.same(t)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn maximal_id(&self, root: ObjId) -> usize {
        self.sieves[root]
            .iter()
            .position(|s| s.is_maximal())
            .expect("maximal sieve is always in the lattice")
    }
}

/// Per-object covering sets, as ids into a [`SiteLattice`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TopologyTable {
    pub covering: Vec<BTreeSet<usize>>,
}

impl TopologyTable {
    pub fn is_discrete(&self, lattice: &SiteLattice) -> bool {
        self.covering
            .iter()
            .enumerate()
            .all(|(x, set)| set.len() == lattice.sieves[x].len())
    }

    pub fn is_trivial(&self) -> bool {
        self.covering.iter().all(|set| set.len() == 1)
    }

    /// Ids of the inclusion-minimal covering sieves per object.
    pub fn minimal_covers(&self, lattice: &SiteLattice) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        for (x, set) in self.covering.iter().enumerate() {
            let ids: Vec<usize> = set.iter().copied().collect();
            let mut mins = Vec::new();
            'outer: for &i in &ids {
                for &j in &ids {
                    if i != j
                        && lattice.sieves[x][i].contains(&lattice.sieves[x][j])?
                        && !lattice.sieves[x][j].contains(&lattice.sieves[x][i])?
                    {
                        continue 'outer;
                    }
                }
                mins.push(i);
            }
            out.push(mins);
        }
        Ok(out)
    }
}

/// Check the three axioms against the full lattice.
pub fn is_topology<C: Category + ?Sized>(
    c: &C,
    lattice: &SiteLattice,
    table: &TopologyTable,
) -> Result<bool> {
    let field = c.field();
    let n = c.object_count();
    for x in 0..n {
        if !table.covering[x].contains(&lattice.maximal_id(x)) {
            return Ok(false);
        }
    }
    // pullback stability along every morphism
    for x in 0..n {
        for &sid in &table.covering[x] {
            let s = &lattice.sieves[x][sid];
            for y in 0..n {
                for h in all_vectors(field, c.hom_dim(y, x))? {
                    let pb = pullback_sieve(c, s, y, &h)?;
                    let Some(pid) = lattice.find(&pb)? else {
                        return Err(Error::Internal("pullback escaped the lattice".into()));
                    };
                    if !table.covering[y].contains(&pid) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    // local character
    for x in 0..n {
        for &sid in &table.covering[x] {
            let s = &lattice.sieves[x][sid];
            for (rid, r) in lattice.sieves[x].iter().enumerate() {
                if table.covering[x].contains(&rid) {
                    continue;
                }
                let mut locally_covering = true;
                'hunt: for y in 0..n {
                    let sy = &s.components[y];
                    for combo in all_vectors(field, sy.cols())? {
                        if combo.iter().all(|s| s.is_zero()) {
                            continue;
                        }
                        let h = sy
                            .mul(&ExactMatrix::from_cols(field, combo.len(), &[combo])?)?
                            .col(0);
                        let pb = pullback_sieve(c, r, y, &h)?;
                        let Some(pid) = lattice.find(&pb)? else {
                            return Err(Error::Internal("pullback escaped the lattice".into()));
                        };
                        if !table.covering[y].contains(&pid) {
                            locally_covering = false;
                            break 'hunt;
                        }
                    }
                }
                if locally_covering {
                    return Ok(false); // r should have been covering
                }
            }
        }
    }
    Ok(true)
}

/// All Grothendieck topologies on the skeleton, exhaustively.
pub fn enumerate_topologies<C: Category + ?Sized>(
    c: &C,
    limit: usize,
) -> Result<(SiteLattice, Vec<TopologyTable>)> {
    let lattice = SiteLattice::build(c, limit)?;
    let n = c.object_count();
    // candidate covering sets per object: upward-closed families containing
    // the maximal sieve (upward closure is implied by the axioms)
    let mut per_object: Vec<Vec<BTreeSet<usize>>> = Vec::new();
    for x in 0..n {
        let sieves = &lattice.sieves[x];
        let m = sieves.len();
        if m > 20 {
            return Err(Error::LatticeLimit(format!(
                "{m} sieves on one object is beyond the enumeration guard"
            )));
        }
        let mut upsets = Vec::new();
        'subset: for mask in 0..(1usize << m) {
            let set: BTreeSet<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
            if !set.contains(&lattice.maximal_id(x)) {
                continue;
            }
            for &i in &set {
                for j in 0..m {
                    if !set.contains(&j) && sieves[j].contains(&sieves[i])? {
                        continue 'subset;
                    }
                }
            }
            upsets.push(set);
        }
        per_object.push(upsets);
    }
    let combos: usize = per_object.iter().map(|v| v.len()).product();
    if combos > limit {
        return Err(Error::LatticeLimit(format!(
            "{combos} candidate tables exceed the limit {limit}"
        )));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let table = TopologyTable {
            covering: idx
                .iter()
                .enumerate()
                .map(|(x, &i)| per_object[x][i].clone())
                .collect(),
        };
        if is_topology(c, &lattice, &table)? {
            out.push(table);
        }
        let mut pos = 0;
        loop {
            if pos == n {
                out.sort();
                return Ok((lattice, out));
            }
            idx[pos] += 1;
            if idx[pos] < per_object[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Covering decisions induced by a functor: a sieve covers its root iff the
/// joint image of θ over the sieve spans θ(root).
pub fn topology_of_functor<C, F>(
    c: &C,
    th: &F,
    lattice: &SiteLattice,
) -> Result<TopologyTable>
where
    C: Category + ?Sized,
    F: LinearFunctor + ?Sized,
{
    let field = c.field();
    let mut covering = Vec::with_capacity(c.object_count());
    for x in 0..c.object_count() {
        let dim_target = th.obj_dim(x);
        let mut set = BTreeSet::new();
        for (sid, s) in lattice.sieves[x].iter().enumerate() {
            let mut joint = ExactMatrix::zeros(field, dim_target, 0);
            for y in 0..c.object_count() {
                let sy = &s.components[y];
                if sy.cols() == 0 {
                    continue;
                }
                let basis = hom_basis(c, &AddObject::single(y), &AddObject::single(x));
                for k in 0..sy.cols() {
                    let e = basis.from_vector(field, &sy.col(k))?;
                    let img = th.on_expr(&e)?;
                    joint = joint.hcat(&img)?;
                }
            }
            if joint.rank() == dim_target {
                set.insert(sid);
            }
        }
        covering.push(set);
    }
    Ok(TopologyTable { covering })
}

/// The homological topology of θ: covering decisions of the kernel functor
/// on a declared skeleton of the kernel completion.
pub fn homological_topology<C, F>(
    c: &C,
    th: &F,
    sk: &NoySkeleton,
    lattice: &SiteLattice,
) -> Result<TopologyTable>
where
    C: Category + ?Sized,
    F: LinearFunctor + ?Sized,
{
    let vec_th: FunctorSpec = crate::noy::vec_theta_functor(c, th, sk)?;
    topology_of_functor(&sk.presentation, &vec_th, lattice)
}

/// The sieve on a skeleton object generated by every morphism from an
/// embedded base object (all such morphisms annihilate the structure map).
pub fn canonical_sieve_rf(sk: &NoySkeleton, i: usize) -> Result<Sieve> {
    let c = &sk.presentation;
    let field = c.field();
    let mut gens: Vec<(ObjId, Vec<Scalar>)> = Vec::new();
    for (j, is_n) in sk.n_image.iter().enumerate() {
        if !is_n {
            continue;
        }
        let d = c.hom_dim(j, i);
        for k in 0..d {
            let mut v = vec![field.zero(); d];
            v[k] = field.one();
            gens.push((j, v));
        }
    }
    sieve_closure(c, i, &gens)
}

/// Does every canonical sieve cover in the given topology? This tests
/// membership of the table in the image of the embedding of ordinary
/// topologies into homological ones.
pub fn iota_image_test(
    sk: &NoySkeleton,
    lattice: &SiteLattice,
    table: &TopologyTable,
) -> Result<bool> {
    for i in 0..sk.objects.len() {
        let rf = canonical_sieve_rf(sk, i)?;
        let Some(id) = lattice.find(&rf)? else {
            return Err(Error::Internal("canonical sieve escaped the lattice".into()));
        };
        if !table.covering[i].contains(&id) {
            return Ok(false);
        }
    }
    Ok(true)
}
