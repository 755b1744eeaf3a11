//! Stock presentations used across tests, benchmarks and the CLI examples:
//! free-module skeletons of small finite-dimensional algebras.

use crate::cat::{CatPresentation, DualData, MonoidalData};
use crate::field::FieldSpec;
use crate::Result;
use std::collections::HashMap;

/// One object `R`, hom basis `{id, x}` with `x ∘ x = 0`: the free-module
/// skeleton of the dual numbers k[x]/x².
pub fn dual_numbers(field: FieldSpec) -> Result<CatPresentation> {
    truncated_polynomial(field, 2)
}

/// One object `R`, hom basis `{id, x, …, x^(n-1)}` with `x^i ∘ x^j = x^(i+j)`
/// truncated at degree `n`: the free-module skeleton of k[x]/xⁿ.
pub fn truncated_polynomial(field: FieldSpec, n: usize) -> Result<CatPresentation> {
    assert!(n >= 1);
    let mut b = CatPresentation::builder(&format!("k[x]/x^{n}"), field);
    let r = b.object("R");
    let mut pows = Vec::with_capacity(n);
    for i in 0..n {
        let name = match i {
            0 => "id".to_string(),
            1 => "x".to_string(),
            k => format!("x^{k}"),
        };
        pows.push(b.basis_mor(&name, r, r));
    }
    b.identity(r, vec![(pows[0].idx, field.one())]);
    for i in 0..n {
        for j in 0..n {
            let lc = if i + j < n {
                vec![(pows[i + j].idx, field.one())]
            } else {
                vec![]
            };
            b.rule(pows[i], pows[j], lc);
        }
    }
    b.finish()
}

/// k[x]/x² as a rigid monoidal skeleton: R is self-dual with ev = co = the
/// multiplication pairing (R ⊗_R R = R), making the unit object R itself.
pub fn dual_numbers_monoidal(field: FieldSpec) -> Result<CatPresentation> {
    let mut c = dual_numbers(field)?;
    let r = c.find_object("R").unwrap();
    let id = c.find_basis("id").unwrap();
    let x = c.find_basis("x").unwrap();
    let mut obj_tensor = HashMap::new();
    obj_tensor.insert((r, r), r);
    let mut mor_tensor = HashMap::new();
    // a ⊗_R b is multiplication in the algebra
    mor_tensor.insert((id, id), vec![(id.idx, field.one())]);
    mor_tensor.insert((id, x), vec![(x.idx, field.one())]);
    mor_tensor.insert((x, id), vec![(x.idx, field.one())]);
    mor_tensor.insert((x, x), vec![]);
    let mut duality = HashMap::new();
    duality.insert(
        r,
        DualData {
            dual: r,
            ev: vec![(id.idx, field.one())],
            co: vec![(id.idx, field.one())],
        },
    );
    c.monoidal = Some(MonoidalData {
        unit: r,
        obj_tensor,
        mor_tensor,
        duality,
    });
    Ok(c)
}

/// Two objects `X`, `Y` with End = k each and no morphisms between them.
pub fn two_orthogonal_simples(field: FieldSpec) -> Result<CatPresentation> {
    let mut b = CatPresentation::builder("two-simples", field);
    let x = b.object("X");
    let y = b.object("Y");
    let idx = b.basis_mor("idX", x, x);
    let idy = b.basis_mor("idY", y, y);
    b.identity(x, vec![(idx.idx, field.one())]);
    b.identity(y, vec![(idy.idx, field.one())]);
    b.rule(idx, idx, vec![(idx.idx, field.one())]);
    b.rule(idy, idy, vec![(idy.idx, field.one())]);
    b.finish()
}

/// One object with End = k.
pub fn one_object_trivial(field: FieldSpec) -> Result<CatPresentation> {
    let mut b = CatPresentation::builder("point", field);
    let x = b.object("X");
    let id = b.basis_mor("id", x, x);
    b.identity(x, vec![(id.idx, field.one())]);
    b.rule(id, id, vec![(id.idx, field.one())]);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::Category;

    #[test]
    fn dual_numbers_validates() {
        let c = dual_numbers(FieldSpec::Rationals).unwrap();
        assert!(c.validate().is_empty());
        let r = c.find_object("R").unwrap();
        assert_eq!(c.hom_dim(r, r), 2);
    }

    #[test]
    fn idempotent_x_is_still_a_category() {
        // same presentation with x ∘ x = x: nilpotency lost, axioms keep holding
        let field = FieldSpec::Rationals;
        let mut b = CatPresentation::builder("idempotent", field);
        let r = b.object("R");
        let id = b.basis_mor("id", r, r);
        let x = b.basis_mor("x", r, r);
        b.identity(r, vec![(id.idx, field.one())]);
        b.rule(x, x, vec![(x.idx, field.one())]);
        let c = b.finish().unwrap();
        assert!(c.validate().is_empty());
    }

    #[test]
    fn missing_rule_is_reported() {
        let field = FieldSpec::Rationals;
        let mut b = CatPresentation::builder("broken", field);
        let r = b.object("R");
        let id = b.basis_mor("id", r, r);
        let _x = b.basis_mor("x", r, r);
        b.identity(r, vec![(id.idx, field.one())]);
        // no rule for x ∘ x
        let c = b.finish().unwrap();
        let report = c.validate();
        assert!(report.iter().any(|l| l.contains("missing composition")));
    }

    #[test]
    fn monoidal_dual_numbers_passes_snake_checks() {
        let c = dual_numbers_monoidal(FieldSpec::Rationals).unwrap();
        assert!(c.validate().is_empty());
    }
}
