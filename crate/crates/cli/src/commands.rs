//! Command implementations: each takes the parsed inputs and produces a
//! [`Report`]. All iteration orders are deterministic.

use std::collections::HashMap;

use homkern::cat::{self, CatPresentation, FunctorSpec, MorphismExpr};
use homkern::complex::Complex;
use homkern::diagram::{ContractionFunctor, DiagramCategory, Word};
use homkern::kernels::{
    self, Certainty, Completeness, FlatVerdict, PrexactVerdict, Window,
};
use homkern::noy::{self, NoyObject};
use homkern::sites;
use homkern::{AddObject, Category, Error};

use crate::parse::{ParsedFile, Source};
use crate::report::{Report, Status};

type Result<T> = std::result::Result<T, Error>;

/// Parse `R` or `R+R+S` against a presentation.
fn parse_add_object(c: &CatPresentation, text: &str) -> Result<AddObject> {
    if text.trim() == "0" {
        return Ok(AddObject::zero());
    }
    let mut v = Vec::new();
    for part in text.split('+') {
        let name = part.trim();
        let x = c
            .find_object(name)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown object {name}") })?;
        v.push(x);
    }
    Ok(AddObject(v))
}

/// Parse a morphism given by a basis-name linear combination.
fn parse_morphism(c: &CatPresentation, text: &str) -> Result<MorphismExpr> {
    let text = text.trim();
    let mut acc: Option<MorphismExpr> = None;
    let field = c.field();
    let mut norm = String::new();
    let mut prev_space = true;
    for ch in text.chars() {
        if ch == '-' && prev_space && !norm.is_empty() {
            norm.push_str("+ -");
        } else {
            norm.push(ch);
        }
        prev_space = ch.is_whitespace();
    }
    for term in norm.split('+') {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let negate = term.starts_with('-');
        let term = term.trim_start_matches('-').trim();
        let parts: Vec<&str> = term.split_whitespace().collect();
        let (coeff, name) = match parts.as_slice() {
            [name] => (field.one(), *name),
            [c0, name] => (
                crate::parse::parse_scalar_pub(field, c0)?,
                *name,
            ),
            _ => {
                return Err(Error::Parse { line: 0, msg: format!("cannot read term '{term}'") })
            }
        };
        let coeff = if negate { field.neg(&coeff)? } else { coeff };
        let m = c
            .find_basis(name)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown morphism {name}") })?;
        let e = cat::scale_expr(c, &MorphismExpr::from_basis(c, m), &coeff);
        acc = Some(match acc {
            None => e,
            Some(prev) => cat::add_exprs(c, &prev, &e)?,
        });
    }
    acc.ok_or_else(|| Error::Parse { line: 0, msg: "empty morphism expression".into() })
}

/// Parse an object of the kernel completion: `N R` or a morphism expression.
fn parse_noy_object(c: &CatPresentation, text: &str) -> Result<NoyObject> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("N ") {
        return Ok(NoyObject::n_image(c, parse_add_object(c, rest)?));
    }
    Ok(NoyObject::new(parse_morphism(c, text)?))
}

/// Parse a complex: `obj R` (concentrated in degree 0) or a morphism
/// expression (two-term in degrees 0, 1).
fn parse_complex(c: &CatPresentation, text: &str) -> Result<Complex> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("obj ") {
        return Ok(Complex::concentrated(parse_add_object(c, rest)?, 0));
    }
    Ok(Complex::two_term(parse_morphism(c, text)?, 0))
}

fn need_presentation(p: &ParsedFile) -> Result<(&CatPresentation, &HashMap<String, FunctorSpec>)> {
    match &p.source {
        Source::Presentation { cat, functors } => Ok((cat, functors)),
        _ => Err(Error::Unsupported(
            "this command needs an explicit presentation".into(),
        )),
    }
}

fn find_functor<'a>(
    functors: &'a HashMap<String, FunctorSpec>,
    name: &str,
) -> Result<&'a FunctorSpec> {
    functors
        .get(name)
        .ok_or_else(|| Error::Parse { line: 0, msg: format!("no functor named {name} in the file") })
}

fn describe_certainty(c: &Certainty) -> String {
    match c {
        Certainty::Exact(Completeness::AllGenerators) => "exact (all generators in window)".into(),
        Certainty::Exact(Completeness::AssertedWordLength(n)) => {
            format!("exact assuming word-length bound {n} (user assertion)")
        }
        Certainty::Exact(Completeness::None) => "exact".into(),
        Certainty::WindowBound => "window bound (more witnesses can only shrink it)".into(),
    }
}

/// Default window: every generator singleton (a complete family for an
/// explicit presentation). An explicit `--window` list drops the
/// completeness claim unless it still contains every generator.
fn window_for(cat: &CatPresentation, restrict: Option<&str>) -> Result<Window> {
    match restrict {
        None => Ok(Window::with_all_generators(cat)),
        Some(spec) => {
            let mut objects = Vec::new();
            for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                objects.push(parse_add_object(cat, name)?);
            }
            let full = Window::with_all_generators(cat);
            let complete = full
                .objects
                .iter()
                .all(|g| objects.iter().any(|o| o == g));
            Ok(Window {
                objects,
                completeness: if complete {
                    Completeness::AllGenerators
                } else {
                    Completeness::None
                },
            })
        }
    }
}

pub fn cmd_hom(p: &ParsedFile, source: &str, target: &str) -> Result<Report> {
    let mut r = Report::new("hom");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    match &p.source {
        Source::Presentation { cat, .. } => {
            let a = parse_add_object(cat, source)?;
            let b = parse_add_object(cat, target)?;
            let basis = cat::hom_basis(cat, &a, &b);
            r.line("dim", basis.dim().to_string());
        }
        Source::Diagram { cat, .. } => {
            let a = cat.word_id(&parse_word(cat, source)?)?;
            let b = cat.word_id(&parse_word(cat, target)?)?;
            r.line("dim", cat.hom_dim(a, b).to_string());
            for idx in 0..cat.hom_dim(a, b) {
                let d = cat.diagram(homkern::BasisMor { src: a, tgt: b, idx });
                r.line(&format!("basis[{idx}]"), d.short_name());
            }
        }
        Source::NoySkeleton { skeleton, .. } => {
            let c = &skeleton.presentation;
            let a = parse_add_object(c, source)?;
            let b = parse_add_object(c, target)?;
            r.line("dim", cat::hom_basis(c, &a, &b).dim().to_string());
        }
    }
    Ok(r)
}

fn parse_word(cat: &DiagramCategory, s: &str) -> Result<Word> {
    match cat.flavor {
        homkern::diagram::Flavor::Unbraided { .. } => Word::parse_indices(s),
        _ => Word::parse_colours(s),
    }
}

pub fn cmd_compose(p: &ParsedFile, g: &str, f: &str) -> Result<Report> {
    let mut r = Report::new("compose");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    match &p.source {
        Source::Presentation { cat, .. } => {
            let ge = parse_morphism(cat, g)?;
            let fe = parse_morphism(cat, f)?;
            let out = cat::compose(cat, &ge, &fe)?;
            r.line("g", g.trim());
            r.line("f", f.trim());
            r.line("g∘f", render_morphism(cat, &out));
        }
        Source::Diagram { cat, .. } => {
            let ge = parse_diagram_morphism(cat, g)?;
            let fe = parse_diagram_morphism(cat, f)?;
            let out = cat::compose(cat, &ge, &fe)?;
            r.line("g", g.trim());
            r.line("f", f.trim());
            let lc = out.block(0, 0);
            let rendered = if lc.is_empty() {
                "0".to_string()
            } else {
                lc.iter()
                    .map(|(k, coeff)| {
                        let name = cat.basis_name(homkern::BasisMor {
                            src: out.source.0[0],
                            tgt: out.target.0[0],
                            idx: *k,
                        });
                        if *coeff == cat.field().one() {
                            name
                        } else {
                            format!("{coeff} {name}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            r.line("g∘f", rendered);
        }
        Source::NoySkeleton { .. } => {
            return Err(Error::Unsupported(
                "compose runs on presentations and diagram windows".into(),
            ))
        }
    }
    Ok(r)
}

fn render_morphism(c: &CatPresentation, e: &MorphismExpr) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for i in 0..e.target.len() {
        for j in 0..e.source.len() {
            let lc = e.block(i, j);
            if lc.is_empty() {
                continue;
            }
            let terms: Vec<String> = lc
                .iter()
                .map(|(k, s)| {
                    let name = c.basis_name(homkern::BasisMor {
                        src: e.source.0[j],
                        tgt: e.target.0[i],
                        idx: *k,
                    });
                    if *s == c.field().one() {
                        name
                    } else {
                        format!("{s} {name}")
                    }
                })
                .collect();
            if e.target.len() == 1 && e.source.len() == 1 {
                parts.push(terms.join(" + "));
            } else {
                parts.push(format!("[{i},{j}]: {}", terms.join(" + ")));
            }
        }
    }
    parts.join("; ")
}

pub fn cmd_noy_hom(p: &ParsedFile, f: &str, g: &str) -> Result<Report> {
    let (cat, _) = need_presentation(p)?;
    let mut r = Report::new("noy-hom");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    let fo = parse_noy_object(cat, f)?;
    let go = parse_noy_object(cat, g)?;
    let h = noy::noy_hom(cat, &fo, &go)?;
    r.line("dim", h.dimension().to_string());
    for k in 0..h.dimension() {
        r.line(
            &format!("class[{k}]"),
            render_morphism(cat, &h.rep_expr(cat, k)?),
        );
    }
    Ok(r)
}

pub fn cmd_kb_hom(p: &ParsedFile, x: &str, y: &str) -> Result<Report> {
    let (cat, _) = need_presentation(p)?;
    let mut r = Report::new("kb-hom");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    let cx = parse_complex(cat, x)?;
    cx.validate(cat)?;
    let cy = parse_complex(cat, y)?;
    cy.validate(cat)?;
    let h = homkern::complex::kb_hom(cat, &cx, &cy)?;
    r.line("dim", h.dimension().to_string());
    Ok(r)
}

pub fn cmd_sigma(p: &ParsedFile, object: &str, morphism: &str, window: Option<&str>) -> Result<Report> {
    let (cat, _) = need_presentation(p)?;
    let mut r = Report::new("sigma");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    let a = parse_add_object(cat, object)?;
    let f = parse_morphism(cat, morphism)?;
    let w = window_for(cat, window)?;
    r.head(
        "window",
        match window {
            None => "all generator objects".to_string(),
            Some(s) => format!("restricted to {{{s}}}"),
        },
    );
    let v = kernels::canonical_sigma(cat, &a, &f, &w)?;
    r.line("object", object.trim());
    r.line("morphism", morphism.trim());
    r.line("dim", v.dimension().to_string());
    r.line("certainty", describe_certainty(&v.certainty));
    Ok(r)
}

pub fn cmd_sigma_theta(p: &ParsedFile, functor: &str, object: &str, morphism: &str) -> Result<Report> {
    let (cat, functors) = need_presentation(p)?;
    let th = find_functor(functors, functor)?;
    let mut r = Report::new("sigma-theta");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    r.head("functor", functor);
    let a = parse_add_object(cat, object)?;
    let f = parse_morphism(cat, morphism)?;
    let s = kernels::sigma_theta(cat, th, &a, &f)?;
    r.line("object", object.trim());
    r.line("morphism", morphism.trim());
    r.line("dim", s.dimension().to_string());
    r.line("certainty", "exact (no window needed)");
    Ok(r)
}

fn window_morphisms(cat: &CatPresentation) -> Vec<(String, MorphismExpr)> {
    let mut out = Vec::new();
    for m in cat.all_basis_mors() {
        out.push((
            cat.basis_name(m),
            MorphismExpr::from_basis(cat, m),
        ));
    }
    out
}

pub fn cmd_prexact(
    p: &ParsedFile,
    functor: &str,
    morphism: Option<&str>,
    window: Option<&str>,
) -> Result<Report> {
    let (cat, functors) = need_presentation(p)?;
    let th = find_functor(functors, functor)?;
    let mut r = Report::new("prexact");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    r.head("functor", functor);
    r.head(
        "window",
        match window {
            None => "all generator objects".to_string(),
            Some(s) => format!("restricted to {{{s}}}"),
        },
    );
    let w = window_for(cat, window)?;
    let fs: Vec<(String, MorphismExpr)> = match morphism {
        Some(m) => vec![(m.trim().to_string(), parse_morphism(cat, m)?)],
        None => window_morphisms(cat),
    };
    let mut all_inconclusive = true;
    for (name, f) in &fs {
        let verdict = kernels::prexact_check(cat, th, f, &w)?;
        let text = match &verdict {
            PrexactVerdict::Certified { witness_source, witness } => {
                all_inconclusive = false;
                format!(
                    "certified (witness from {}: {})",
                    witness_source.name(cat),
                    render_morphism(cat, witness)
                )
            }
            PrexactVerdict::Refuted { .. } => {
                all_inconclusive = false;
                "refuted (surviving kernel class under a complete window)".into()
            }
            PrexactVerdict::Inconclusive => "inconclusive".into(),
        };
        r.line(name, text);
    }
    let aggregate = {
        let verdicts: Vec<PrexactVerdict> = fs
            .iter()
            .map(|(_, f)| kernels::prexact_check(cat, th, f, &w))
            .collect::<Result<_>>()?;
        if verdicts.iter().any(|v| v.is_refuted()) {
            "refuted"
        } else if verdicts.iter().all(|v| v.is_certified()) {
            "certified"
        } else {
            "inconclusive"
        }
    };
    r.line("aggregate", aggregate);
    if all_inconclusive {
        r.status = Status::Inconclusive;
    }
    Ok(r)
}

pub fn cmd_flat(
    p: &ParsedFile,
    functor: &str,
    morphism: Option<&str>,
    window: Option<&str>,
) -> Result<Report> {
    let (cat, functors) = need_presentation(p)?;
    let th = find_functor(functors, functor)?;
    let mut r = Report::new("flat");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    r.head("functor", functor);
    let w = window_for(cat, window)?;
    let fs: Vec<(String, MorphismExpr)> = match morphism {
        Some(m) => vec![(m.trim().to_string(), parse_morphism(cat, m)?)],
        None => window_morphisms(cat),
    };
    let mut all_inconclusive = true;
    for (name, f) in &fs {
        let verdict = kernels::flat_check_promoted(cat, th, f, &w)?;
        let text = match verdict {
            FlatVerdict::Preserved => {
                all_inconclusive = false;
                "weak kernel preserved"
            }
            FlatVerdict::Violated { .. } => {
                all_inconclusive = false;
                "weak kernel collapsed (non-factoring kernel class)"
            }
            FlatVerdict::Inconclusive => "inconclusive",
        };
        r.line(name, text);
    }
    if all_inconclusive {
        r.status = Status::Inconclusive;
    }
    Ok(r)
}

pub fn cmd_topologies(p: &ParsedFile, limit: usize) -> Result<Report> {
    let mut r = Report::new("topologies");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    match &p.source {
        Source::Presentation { cat, .. } => {
            let (lattice, tops) = sites::enumerate_topologies(cat, limit)?;
            report_topologies(&mut r, cat, &lattice, &tops, None)?;
        }
        Source::NoySkeleton { skeleton, .. } => {
            let c = &skeleton.presentation;
            r.head(
                "skeleton",
                format!(
                    "user-declared objects {{{}}}; enumeration is complete relative to this declaration",
                    skeleton.names.join(", ")
                ),
            );
            let (lattice, tops) = sites::enumerate_topologies(c, limit)?;
            report_topologies(&mut r, c, &lattice, &tops, Some(skeleton))?;
        }
        Source::Diagram { .. } => {
            return Err(Error::Unsupported(
                "topology enumeration needs a finite presentation".into(),
            ))
        }
    }
    Ok(r)
}

fn report_topologies(
    r: &mut Report,
    c: &CatPresentation,
    lattice: &sites::SiteLattice,
    tops: &[sites::TopologyTable],
    sk: Option<&homkern::noy::NoySkeleton>,
) -> Result<()> {
    for (x, sieves) in lattice.sieves.iter().enumerate() {
        r.line(
            &format!("sieves on {}", c.object_name(x)),
            sieves.len().to_string(),
        );
    }
    r.line("topologies", tops.len().to_string());
    for (i, t) in tops.iter().enumerate() {
        let label = if t.is_discrete(lattice) {
            "discrete (every sieve covers)".to_string()
        } else if t.is_trivial() {
            "trivial (only maximal sieves cover)".to_string()
        } else {
            let mins = t.minimal_covers(lattice)?;
            let mut parts = Vec::new();
            for (x, ids) in mins.iter().enumerate() {
                for id in ids {
                    let s = &lattice.sieves[x][*id];
                    if !s.is_maximal() {
                        parts.push(format!(
                            "min cover on {}: {}",
                            c.object_name(x),
                            s.describe(c)
                        ));
                    }
                }
            }
            if parts.is_empty() {
                "only maximal proper covers".into()
            } else {
                parts.join("; ")
            }
        };
        r.line(&format!("topology[{i}]"), label);
        if let Some(sk) = sk {
            let in_image = sites::iota_image_test(sk, lattice, t)?;
            r.line(
                &format!("topology[{i}] canonical-sieve test"),
                if in_image { "pass (in the embedded image)" } else { "fail" },
            );
        }
    }
    Ok(())
}

pub fn cmd_topology_of(p: &ParsedFile, functor: &str, limit: usize) -> Result<Report> {
    let mut r = Report::new("topology-of");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    r.head("functor", functor);
    match &p.source {
        Source::Presentation { cat, functors } => {
            let th = find_functor(functors, functor)?;
            let lattice = sites::SiteLattice::build(cat, limit)?;
            let table = sites::topology_of_functor(cat, th, &lattice)?;
            report_covering(&mut r, cat, &lattice, &table)?;
        }
        Source::NoySkeleton { base, base_functors, skeleton } => {
            let th = find_functor(base_functors, functor)?;
            let lattice = sites::SiteLattice::build(&skeleton.presentation, limit)?;
            let table = sites::homological_topology(base, th, skeleton, &lattice)?;
            r.head("kind", "homological topology (kernel functor on the skeleton)");
            report_covering(&mut r, &skeleton.presentation, &lattice, &table)?;
            let in_image = sites::iota_image_test(skeleton, &lattice, &table)?;
            r.line(
                "canonical-sieve test",
                if in_image { "pass (in the embedded image)" } else { "fail" },
            );
        }
        Source::Diagram { .. } => {
            return Err(Error::Unsupported(
                "topology decisions need a finite presentation".into(),
            ))
        }
    }
    Ok(r)
}

fn report_covering(
    r: &mut Report,
    c: &CatPresentation,
    lattice: &sites::SiteLattice,
    table: &sites::TopologyTable,
) -> Result<()> {
    if table.is_discrete(lattice) {
        r.line("label", "discrete (every sieve covers)");
    } else if table.is_trivial() {
        r.line("label", "trivial (only maximal sieves cover)");
    } else {
        r.line("label", "between discrete and trivial");
    }
    for (x, set) in table.covering.iter().enumerate() {
        let descs: Vec<String> = set
            .iter()
            .map(|&i| lattice.sieves[x][i].describe(c))
            .collect();
        r.line(
            &format!("covering on {}", c.object_name(x)),
            descs.join(" | "),
        );
    }
    Ok(())
}

pub fn cmd_hsigma(
    p: &ParsedFile,
    morphism: &str,
    functor: Option<&str>,
    window_len: Option<usize>,
) -> Result<Report> {
    let mut r = Report::new("hsigma");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    match &p.source {
        Source::Diagram { cat, functors } => {
            let f = parse_diagram_morphism(cat, morphism)?;
            match functor {
                None => {
                    let len = window_len.unwrap_or(cat.max_len);
                    let w = kernels::balanced_window(cat, len)?;
                    r.head(
                        "window",
                        format!("balanced words up to length {len} (asserted bound)"),
                    );
                    let v = kernels::monoidal_sigma(cat, &f, &w)?;
                    r.line("morphism", morphism.trim());
                    r.line("dim", v.dimension().to_string());
                    r.line("certainty", describe_certainty(&v.certainty));
                }
                Some(fname) => {
                    let n = *functors.get(fname).ok_or_else(|| Error::Parse {
                        line: 0,
                        msg: format!("no functor named {fname} in the file"),
                    })?;
                    let th = ContractionFunctor::new(cat, n)?;
                    let s = kernels::monoidal_sigma_theta(cat, &th, &f)?;
                    r.head("functor", format!("{fname} (contraction, n = {n})"));
                    r.line("morphism", morphism.trim());
                    r.line("dim", s.dimension().to_string());
                    r.line("certainty", "exact (no window needed)");
                }
            }
        }
        Source::Presentation { cat, functors } => {
            if cat.monoidal.is_none() {
                return Err(Error::MissingMonoidal(p.name.clone()));
            }
            let f = parse_morphism(cat, morphism)?;
            match functor {
                None => {
                    let w = window_for(cat, None)?;
                    r.head("window", "all generator objects");
                    let v = kernels::monoidal_sigma(cat, &f, &w)?;
                    r.line("morphism", morphism.trim());
                    r.line("dim", v.dimension().to_string());
                    r.line("certainty", describe_certainty(&v.certainty));
                }
                Some(fname) => {
                    let th = find_functor(functors, fname)?;
                    let s = kernels::monoidal_sigma_theta(cat, th, &f)?;
                    r.head("functor", fname);
                    r.line("morphism", morphism.trim());
                    r.line("dim", s.dimension().to_string());
                    r.line("certainty", "exact (no window needed)");
                }
            }
        }
        Source::NoySkeleton { .. } => {
            return Err(Error::Unsupported(
                "hsigma runs on monoidal categories, not skeletons".into(),
            ))
        }
    }
    Ok(r)
}

/// Diagram morphisms on the command line: `fr-probe:p` or `src>tgt:k`.
fn parse_diagram_morphism(cat: &DiagramCategory, text: &str) -> Result<MorphismExpr> {
    let text = text.trim();
    if let Some(pstr) = text.strip_prefix("fr-probe:") {
        let p: usize = pstr
            .parse()
            .map_err(|_| Error::Parse { line: 0, msg: "bad probe parameter".into() })?;
        return kernels::fr_probe_morphism(cat, p);
    }
    let Some((words, idx)) = text.rsplit_once(':') else {
        return Err(Error::Parse {
            line: 0,
            msg: "diagram morphisms look like 'src>tgt:k' or 'fr-probe:p'".into(),
        });
    };
    let Some((src, tgt)) = words.split_once('>') else {
        return Err(Error::Parse { line: 0, msg: "missing '>' in morphism".into() });
    };
    let s = cat.word_id(&parse_word(cat, src)?)?;
    let t = cat.word_id(&parse_word(cat, tgt)?)?;
    let idx: usize = idx
        .parse()
        .map_err(|_| Error::Parse { line: 0, msg: "bad basis index".into() })?;
    if idx >= cat.hom_dim(s, t) {
        return Err(Error::Parse { line: 0, msg: "basis index out of range".into() });
    }
    Ok(MorphismExpr::from_basis(cat, homkern::BasisMor { src: s, tgt: t, idx }))
}

pub fn cmd_mu_nu(
    p: &ParsedFile,
    functor: &str,
    morphism: Option<&str>,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let (cat, functors) = need_presentation(p)?;
    if cat.monoidal.is_none() {
        return Err(Error::MissingMonoidal(p.name.clone()));
    }
    let th = find_functor(functors, functor)?;
    let mut r = Report::new("mu-nu");
    r.head("category", format!("{} (field {})", p.name, p.field_name()));
    r.head("functor", functor);
    let mut fs: Vec<(String, MorphismExpr)> = match morphism {
        Some(m) => vec![(m.trim().to_string(), parse_morphism(cat, m)?)],
        None => window_morphisms(cat),
    };
    if samples > 0 {
        r.head("samples", format!("{samples} seeded combinations (seed {seed})"));
        fs.extend(sampled_morphisms(cat, samples, seed)?);
    }
    let entries = kernels::mu_nu_check(cat, th, &fs)?;
    let mut all_ok = true;
    for e in &entries {
        let ok = e.mu_agrees && e.nu_agrees;
        all_ok &= ok;
        r.line(
            &e.morphism,
            format!(
                "sigma dim {}, kernel route {}, graded route {}",
                e.sigma_dim,
                if e.mu_agrees { "agrees" } else { "DIFFERS" },
                if e.nu_agrees { "agrees" } else { "DIFFERS" }
            ),
        );
    }
    r.line("agreement", if all_ok { "complete" } else { "violated" });
    if !all_ok {
        return Err(Error::Validation("kernel realizations disagree".into()));
    }
    Ok(r)
}

/// Deterministic sampled linear combinations of same-signature basis
/// morphisms (a small xorshift keeps the CLI free of extra dependencies).
fn sampled_morphisms(
    cat: &CatPresentation,
    samples: usize,
    seed: u64,
) -> Result<Vec<(String, MorphismExpr)>> {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let field = cat.field();
    let mors = cat.all_basis_mors();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < samples && attempts < samples * 20 {
        attempts += 1;
        let a = mors[(next() % mors.len() as u64) as usize];
        let b = mors[(next() % mors.len() as u64) as usize];
        if a.src != b.src || a.tgt != b.tgt {
            continue;
        }
        let ca = field.from_int((next() % 5) as i64 - 2);
        let cb = field.from_int((next() % 5) as i64 - 2);
        let e = cat::add_exprs(
            cat,
            &cat::scale_expr(cat, &MorphismExpr::from_basis(cat, a), &ca),
            &cat::scale_expr(cat, &MorphismExpr::from_basis(cat, b), &cb),
        )?;
        out.push((format!("sample{}", out.len()), e));
    }
    Ok(out)
}

pub fn cmd_fr_plus(p: u64, n: usize) -> Result<Report> {
    let mut r = Report::new("fr-plus");
    r.head("field", format!("F{p}"));
    let d = kernels::fr_plus_dim(p, n)?;
    r.line("p", p.to_string());
    r.line("n", n.to_string());
    r.line("dim", d.to_string());
    Ok(r)
}
