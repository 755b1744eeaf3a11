//! Parser for the structured-text category description format.
//!
//! A file is a sequence of `key = value` lines and `[section]` blocks:
//!
//! ```text
//! field = Q            # or F2, F3, ...
//! name = dual-numbers
//!
//! [objects]
//! R
//!
//! [hom R R]
//! id x
//!
//! [identity R]
//! id
//!
//! [compose]
//! x x = 0
//! # compositions with declared identities are filled in automatically;
//! # every other composable pair must be spelled out
//!
//! [functor theta_k2]
//! dim R = 2
//! x = [[0,1],[0,0]]    # θ(id) defaults to the identity matrix
//! ```
//!
//! Optional `[tensor]` and `[dual]` sections add monoidal and duality data.
//! Instead of explicit sections a file may carry a generation directive
//! (`generate = one-object` with `delta`/`t`/`deltas`/`index_bound` and
//! `max_len`) for the diagram categories, where `[functor N]` sections take
//! `n = <dim>` for the tensor-contraction functor; or `noy-of = <path>` with
//! `skeleton = Name: <object expr>, ...` to build a skeleton of the kernel
//! completion of another file's category.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use homkern::cat::{CatPresentation, DualData, FunctorSpec, MonoidalData, MorphismExpr};
use homkern::diagram::DiagramCategory;
use homkern::field::FieldSpec;
use homkern::matrix::ExactMatrix;
use homkern::noy::{noy_skeleton, NoyObject, NoySkeleton};
use homkern::{AddObject, Category, Error};

type Result<T> = std::result::Result<T, Error>;

pub struct ParsedFile {
    pub name: String,
    pub field: FieldSpec,
    pub source: Source,
}

/// `(line, header, body-lines)` of one `[section]` block.
type Section = (usize, String, Vec<(usize, String)>);

#[allow(clippy::large_enum_variant)]
pub enum Source {
    Presentation {
        cat: CatPresentation,
        functors: HashMap<String, FunctorSpec>,
    },
    Diagram {
        cat: DiagramCategory,
        /// contraction dimensions per functor name
        functors: HashMap<String, usize>,
    },
    NoySkeleton {
        base: CatPresentation,
        base_functors: HashMap<String, FunctorSpec>,
        skeleton: NoySkeleton,
    },
}

impl ParsedFile {
    pub fn field_name(&self) -> String {
        format!("{}", self.field)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
}

fn split_lines(text: &str) -> Lines<'_> {
    let items = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            let no_comment = match l.find('#') {
                Some(p) => &l[..p],
                None => l,
            };
            (i + 1, no_comment.trim())
        })
        .filter(|(_, l)| !l.is_empty())
        .collect();
    Lines { items }
}

fn parse_field(s: &str, line: usize) -> Result<FieldSpec> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = s.strip_prefix('F') {
        let p: u64 = p.parse().map_err(|_| perr(line, format!("bad field {s}")))?;
        return FieldSpec::prime(p);
    }
    Err(perr(line, format!("unknown field {s} (use Q or Fp)")))
}

/// Scalar literal parser for command-line morphism expressions.
pub fn parse_scalar_pub(field: FieldSpec, s: &str) -> Result<homkern::Scalar> {
    parse_scalar(field, s, 0)
}

fn parse_scalar(field: FieldSpec, s: &str, line: usize) -> Result<homkern::Scalar> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| perr(line, format!("bad numerator {num}")))?;
        let d: i64 = den.trim().parse().map_err(|_| perr(line, format!("bad denominator {den}")))?;
        return field.from_ratio(n, d);
    }
    let n: i64 = s.parse().map_err(|_| perr(line, format!("bad number {s}")))?;
    Ok(field.from_int(n))
}

/// Parse a linear combination `2 x + 1/3 y - z` of named basis morphisms of
/// one hom pair. `0` denotes the zero combination.
fn parse_lincomb_with(
    mors: &HashMap<String, homkern::BasisMor>,
    field: FieldSpec,
    src: usize,
    tgt: usize,
    text: &str,
    line: usize,
) -> Result<homkern::LinComb> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    // a hyphen is a sign only at the start or after whitespace, so basis
    // names may contain '-'
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
            [c0, name] => (parse_scalar(field, c0, line)?, *name),
            [c0, "*", name] => (parse_scalar(field, c0, line)?, *name),
            _ => return Err(perr(line, format!("cannot read term '{term}'"))),
        };
        let m = *mors
            .get(name)
            .ok_or_else(|| perr(line, format!("unknown basis morphism {name}")))?;
        if m.src != src || m.tgt != tgt {
            return Err(perr(line, format!("{name} has the wrong source or target")));
        }
        let coeff = if negate { field.neg(&coeff)? } else { coeff };
        out.push((m.idx, coeff));
    }
    Ok(homkern::cat::normalize_lincomb(field, out))
}

fn parse_matrix(field: FieldSpec, text: &str, line: usize) -> Result<ExactMatrix> {
    let text = text.trim();
    if !text.starts_with("[[") || !text.ends_with("]]") {
        if text == "[]" || text == "[[]]" {
            return Ok(ExactMatrix::zeros(field, 0, 0));
        }
        return Err(perr(line, "matrix literal must look like [[a,b],[c,d]]"));
    }
    let inner = &text[2..text.len() - 2];
    let mut rows = Vec::new();
    for row in inner.split("],[") {
        let mut r = Vec::new();
        for entry in row.split(',') {
            if entry.trim().is_empty() {
                continue;
            }
            r.push(parse_scalar(field, entry, line)?);
        }
        rows.push(r);
    }
    ExactMatrix::from_rows(field, rows)
}

pub fn parse_file(path: &Path) -> Result<ParsedFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, msg: format!("cannot read {}: {e}", path.display()) })?;
    parse_text(&text, path.parent().unwrap_or(Path::new(".")))
}

pub fn parse_text(text: &str, dir: &Path) -> Result<ParsedFile> {
    let lines = split_lines(text);
    let mut field: Option<FieldSpec> = None;
    let mut name = String::from("unnamed");
    let mut top: HashMap<String, (usize, String)> = HashMap::new();
    let mut sections: Vec<Section> = Vec::new();
    let mut current: Option<usize> = None;
    for (ln, l) in &lines.items {
        if l.starts_with('[') && l.ends_with(']') {
            sections.push((*ln, l[1..l.len() - 1].trim().to_string(), Vec::new()));
            current = Some(sections.len() - 1);
        } else if let Some(ci) = current {
            sections[ci].2.push((*ln, l.to_string()));
        } else if let Some((k, v)) = l.split_once('=') {
            let k = k.trim().to_string();
            let v = v.trim().to_string();
            match k.as_str() {
                "field" => field = Some(parse_field(&v, *ln)?),
                "name" => name = v,
                _ => {
                    top.insert(k, (*ln, v));
                }
            }
        } else {
            return Err(perr(*ln, format!("expected key = value or [section], got '{l}'")));
        }
    }
    let field = field.ok_or_else(|| perr(0, "missing 'field = ...'"))?;

    if let Some((ln, kind)) = top.get("generate").cloned() {
        return parse_generated(field, name, &kind, &top, &sections, ln);
    }
    if let Some((ln, base_path)) = top.get("noy-of").cloned() {
        return parse_noy_skeleton(field, name, dir, &base_path, &top, ln);
    }
    parse_presentation(field, name, &sections)
}

fn get_num(top: &HashMap<String, (usize, String)>, key: &str) -> Result<Option<i64>> {
    match top.get(key) {
        None => Ok(None),
        Some((ln, v)) => v
            .parse()
            .map(Some)
            .map_err(|_| perr(*ln, format!("bad number for {key}"))),
    }
}

fn parse_generated(
    field: FieldSpec,
    name: String,
    kind: &str,
    top: &HashMap<String, (usize, String)>,
    sections: &[Section],
    ln: usize,
) -> Result<ParsedFile> {
    let max_len = get_num(top, "max_len")?.ok_or_else(|| perr(ln, "missing max_len"))? as usize;
    let scalar = |key: &str| -> Result<homkern::Scalar> {
        let (l, v) = top
            .get(key)
            .ok_or_else(|| perr(ln, format!("missing {key}")))?;
        parse_scalar(field, v, *l)
    };
    let cat = match kind {
        "one-object" => DiagramCategory::one_object(field, scalar("delta")?, max_len)?,
        "one-morphism" => {
            DiagramCategory::one_morphism(field, scalar("delta")?, scalar("t")?, max_len)?
        }
        "one-endomorphism" => {
            let (l, v) = top
                .get("deltas")
                .ok_or_else(|| perr(ln, "missing deltas"))?;
            let deltas = v
                .split(',')
                .map(|s| parse_scalar(field, s, *l))
                .collect::<Result<Vec<_>>>()?;
            DiagramCategory::one_endomorphism(field, deltas, max_len)?
        }
        "unbraided" => {
            let bound = get_num(top, "index_bound")?.ok_or_else(|| perr(ln, "missing index_bound"))?;
            DiagramCategory::unbraided(field, max_len, bound as i16)?
        }
        other => return Err(perr(ln, format!("unknown generator '{other}'"))),
    };
    let mut functors = HashMap::new();
    for (sln, header, body) in sections {
        let Some(fname) = header.strip_prefix("functor ") else {
            return Err(perr(*sln, "generated categories only take [functor ...] sections"));
        };
        let mut n = None;
        for (l, item) in body {
            let Some((k, v)) = item.split_once('=') else {
                return Err(perr(*l, "expected n = <dim>"));
            };
            if k.trim() == "n" {
                n = Some(
                    v.trim()
                        .parse::<usize>()
                        .map_err(|_| perr(*l, "bad dimension"))?,
                );
            }
        }
        let n = n.ok_or_else(|| perr(*sln, "functor section needs n = <dim>"))?;
        functors.insert(fname.trim().to_string(), n);
    }
    Ok(ParsedFile {
        name,
        field,
        source: Source::Diagram { cat, functors },
    })
}

fn parse_presentation(
    field: FieldSpec,
    name: String,
    sections: &[Section],
) -> Result<ParsedFile> {
    let mut b = CatPresentation::builder(&name, field);
    let mut obj_ids: HashMap<String, usize> = HashMap::new();
    let mut mor_ids: HashMap<String, homkern::BasisMor> = HashMap::new();
    // first pass: objects and hom bases
    for (sln, header, body) in sections {
        if header == "objects" {
            for (_, l) in body {
                for o in l.split_whitespace() {
                    obj_ids.insert(o.to_string(), b.object(o));
                }
            }
        } else if header.starts_with("hom ") {
            let parts: Vec<&str> = header.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(perr(*sln, "use [hom X Y]"));
            }
            let src = *obj_ids
                .get(parts[1])
                .ok_or_else(|| perr(*sln, format!("unknown object {}", parts[1])))?;
            let tgt = *obj_ids
                .get(parts[2])
                .ok_or_else(|| perr(*sln, format!("unknown object {}", parts[2])))?;
            for (ln, l) in body {
                for m in l.split_whitespace() {
                    if mor_ids.contains_key(m) {
                        return Err(perr(*ln, format!("duplicate basis morphism name {m}")));
                    }
                    mor_ids.insert(m.to_string(), b.basis_mor(m, src, tgt));
                }
            }
        }
    }
    // second pass: identities, composition, monoidal data
    let mut mon_unit: Option<usize> = None;
    let mut obj_tensor: HashMap<(usize, usize), usize> = HashMap::new();
    let mut mor_tensor = HashMap::new();
    let mut duality = HashMap::new();
    let mut has_tensor = false;
    for (sln, header, body) in sections {
        if let Some(objname) = header.strip_prefix("identity ") {
            let x = *obj_ids
                .get(objname.trim())
                .ok_or_else(|| perr(*sln, format!("unknown object {objname}")))?;
            let text = body
                .iter()
                .map(|(_, l)| l.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            let lc = parse_lincomb_with(&mor_ids, field, x, x, &text, *sln)?;
            b.identity(x, lc);
        } else if header == "compose" {
            for (l, item) in body {
                let Some((lhs, rhs)) = item.split_once('=') else {
                    return Err(perr(*l, "use 'g f = combination'"));
                };
                let names: Vec<&str> = lhs.split_whitespace().collect();
                if names.len() != 2 {
                    return Err(perr(*l, "left side must be 'g f'"));
                }
                let g = *mor_ids
                    .get(names[0])
                    .ok_or_else(|| perr(*l, format!("unknown morphism {}", names[0])))?;
                let f = *mor_ids
                    .get(names[1])
                    .ok_or_else(|| perr(*l, format!("unknown morphism {}", names[1])))?;
                if f.tgt != g.src {
                    return Err(perr(*l, "morphisms are not composable"));
                }
                let lc = parse_lincomb_with(&mor_ids, field, f.src, g.tgt, rhs, *l)?;
                b.rule(g, f, lc);
            }
        } else if header == "tensor" {
            has_tensor = true;
            for (l, item) in body {
                let Some((lhs, rhs)) = item.split_once('=') else {
                    return Err(perr(*l, "tensor lines look like 'a b = c'"));
                };
                let names: Vec<&str> = lhs.split_whitespace().collect();
                match names.as_slice() {
                    ["unit"] => {
                        mon_unit = Some(*obj_ids.get(rhs.trim()).ok_or_else(|| {
                            perr(*l, format!("unknown object {}", rhs.trim()))
                        })?);
                    }
                    [a, bn] => {
                        if let (Some(&x), Some(&y)) = (obj_ids.get(*a), obj_ids.get(*bn)) {
                            let z = *obj_ids
                                .get(rhs.trim())
                                .ok_or_else(|| perr(*l, format!("unknown object {}", rhs.trim())))?;
                            obj_tensor.insert((x, y), z);
                        } else {
                            let ma = *mor_ids
                                .get(*a)
                                .ok_or_else(|| perr(*l, format!("unknown morphism {a}")))?;
                            let mb = *mor_ids
                                .get(*bn)
                                .ok_or_else(|| perr(*l, format!("unknown morphism {bn}")))?;
                            // target hom pair comes from the object table
                            let ts = obj_tensor.get(&(ma.src, mb.src)).copied();
                            let tt = obj_tensor.get(&(ma.tgt, mb.tgt)).copied();
                            let (Some(ts), Some(tt)) = (ts, tt) else {
                                return Err(perr(*l, "declare object products before morphism products"));
                            };
                            let lc = parse_lincomb_with(&mor_ids, field, ts, tt, rhs, *l)?;
                            mor_tensor.insert((ma, mb), lc);
                        }
                    }
                    _ => return Err(perr(*l, "tensor lines look like 'a b = c' or 'unit = X'")),
                }
            }
        } else if header == "dual" {
            for (l, item) in body {
                // X = Y ev: <lincomb> co: <lincomb>
                let Some((lhs, rest)) = item.split_once('=') else {
                    return Err(perr(*l, "dual lines look like 'X = Y ev: ... co: ...'"));
                };
                let x = *obj_ids
                    .get(lhs.trim())
                    .ok_or_else(|| perr(*l, format!("unknown object {}", lhs.trim())))?;
                let Some((yname, evco)) = rest.trim().split_once("ev:") else {
                    return Err(perr(*l, "missing ev:"));
                };
                let y = *obj_ids
                    .get(yname.trim())
                    .ok_or_else(|| perr(*l, format!("unknown object {}", yname.trim())))?;
                let Some((ev_text, co_text)) = evco.split_once("co:") else {
                    return Err(perr(*l, "missing co:"));
                };
                let unit = mon_unit.ok_or_else(|| perr(*l, "declare unit before duals"))?;
                let ydx = *obj_tensor
                    .get(&(y, x))
                    .ok_or_else(|| perr(*l, "missing object product for ev"))?;
                let xyd = *obj_tensor
                    .get(&(x, y))
                    .ok_or_else(|| perr(*l, "missing object product for co"))?;
                let ev = parse_lincomb_with(&mor_ids, field, ydx, unit, ev_text, *l)?;
                let co = parse_lincomb_with(&mor_ids, field, unit, xyd, co_text, *l)?;
                duality.insert(x, DualData { dual: y, ev, co });
            }
        }
    }
    if has_tensor {
        let unit = mon_unit.ok_or_else(|| perr(0, "tensor section needs 'unit = X'"))?;
        b.monoidal(MonoidalData {
            unit,
            obj_tensor,
            mor_tensor,
            duality,
        });
    }
    let cat = b.finish()?;
    let report = cat.validate();
    if !report.is_empty() {
        return Err(Error::Validation(report.join("\n")));
    }

    // functor sections
    let mut functors = HashMap::new();
    for (sln, header, body) in sections {
        let Some(fname) = header.strip_prefix("functor ") else {
            continue;
        };
        let fname = fname.trim();
        let mut dims = vec![usize::MAX; cat.object_count()];
        let mut images: Vec<(usize, String, String)> = Vec::new();
        for (l, item) in body {
            let Some((k, v)) = item.split_once('=') else {
                return Err(perr(*l, "functor lines look like 'dim X = n' or 'm = [[..]]'"));
            };
            let k = k.trim();
            if let Some(objname) = k.strip_prefix("dim ") {
                let x = *obj_ids
                    .get(objname.trim())
                    .ok_or_else(|| perr(*l, format!("unknown object {objname}")))?;
                dims[x] = v
                    .trim()
                    .parse()
                    .map_err(|_| perr(*l, "bad dimension"))?;
            } else {
                images.push((*l, k.to_string(), v.trim().to_string()));
            }
        }
        if dims.contains(&usize::MAX) {
            return Err(perr(*sln, format!("functor {fname}: missing dim for some object")));
        }
        let mut spec = FunctorSpec::new(fname, field, dims.clone());
        for (l, mname, mtext) in images {
            let m = cat
                .find_basis(&mname)
                .ok_or_else(|| perr(l, format!("unknown morphism {mname}")))?;
            let mat = parse_matrix(field, &mtext, l)?;
            if mat.rows() != dims[m.tgt] || mat.cols() != dims[m.src] {
                return Err(perr(l, format!("matrix for {mname} has the wrong shape")));
            }
            spec.set_image(m, mat);
        }
        // θ(id) defaults to the identity when the identity is a basis element
        for x in cat.object_ids() {
            let idlc = cat.identity(x).unwrap();
            if let [(idx, c0)] = idlc.as_slice() {
                if *c0 == field.one() {
                    let m = homkern::BasisMor { src: x, tgt: x, idx: *idx };
                    spec.images
                        .entry(m)
                        .or_insert_with(|| ExactMatrix::identity(field, dims[x]));
                }
            }
        }
        let report = homkern::cat::validate_functor(&cat, &spec)?;
        if !report.is_empty() {
            return Err(Error::Validation(format!(
                "functor {fname}:\n{}",
                report.join("\n")
            )));
        }
        functors.insert(fname.to_string(), spec);
    }
    Ok(ParsedFile {
        name,
        field,
        source: Source::Presentation { cat, functors },
    })
}

fn parse_noy_skeleton(
    field: FieldSpec,
    name: String,
    dir: &Path,
    base_path: &str,
    top: &HashMap<String, (usize, String)>,
    ln: usize,
) -> Result<ParsedFile> {
    let mut full: PathBuf = dir.to_path_buf();
    full.push(base_path);
    let base = parse_file(&full)?;
    if base.field != field {
        return Err(perr(ln, "skeleton field must match the base category field"));
    }
    let Source::Presentation { cat, functors } = base.source else {
        return Err(perr(ln, "noy-of expects an explicit presentation"));
    };
    let (sln, spec) = top
        .get("skeleton")
        .ok_or_else(|| perr(ln, "missing 'skeleton = Name: expr, ...'"))?;
    let mut objs = Vec::new();
    for entry in spec.split(',') {
        let Some((oname, expr)) = entry.split_once(':') else {
            return Err(perr(*sln, "skeleton entries look like 'Name: N R' or 'Name: x'"));
        };
        let oname = oname.trim().to_string();
        let expr = expr.trim();
        let obj = if let Some(base_obj) = expr.strip_prefix("N ") {
            let x = cat
                .find_object(base_obj.trim())
                .ok_or_else(|| perr(*sln, format!("unknown object {base_obj}")))?;
            NoyObject::n_image(&cat, AddObject::single(x))
        } else {
            let m = cat
                .find_basis(expr)
                .ok_or_else(|| perr(*sln, format!("unknown morphism {expr}")))?;
            NoyObject::new(MorphismExpr::from_basis(&cat, m))
        };
        objs.push((oname, obj));
    }
    let skeleton = noy_skeleton(&cat, objs)?;
    Ok(ParsedFile {
        name,
        field,
        source: Source::NoySkeleton {
            base: cat,
            base_functors: functors,
            skeleton,
        },
    })
}

/// Render an explicit presentation back into the file format (used to export
/// generated windows so they can be diffed and re-read).
pub fn presentation_to_text(c: &CatPresentation) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "field = {}", c.field());
    let _ = writeln!(s, "name = {}", c.name);
    let _ = writeln!(s, "\n[objects]");
    let names: Vec<String> = c.object_ids().map(|x| c.object_name(x)).collect();
    let _ = writeln!(s, "{}", names.join(" "));
    for x in c.object_ids() {
        for y in c.object_ids() {
            let basis = c.hom_basis_names(x, y);
            if basis.is_empty() {
                continue;
            }
            let _ = writeln!(s, "\n[hom {} {}]", names[x], names[y]);
            let _ = writeln!(s, "{}", basis.join(" "));
        }
    }
    for x in c.object_ids() {
        let lc = c.identity(x).unwrap_or_default();
        if lc.is_empty() {
            continue;
        }
        let _ = writeln!(s, "\n[identity {}]", names[x]);
        let rendered: Vec<String> = lc
            .iter()
            .map(|(k, coeff)| {
                let b = &c.hom_basis_names(x, x)[*k];
                if *coeff == c.field().one() {
                    b.clone()
                } else {
                    format!("{coeff} {b}")
                }
            })
            .collect();
        let _ = writeln!(s, "{}", rendered.join(" + "));
    }
    let _ = writeln!(s, "\n[compose]");
    for g in c.all_basis_mors() {
        for f in c.all_basis_mors() {
            if f.tgt != g.src {
                continue;
            }
            let Ok(lc) = c.compose_basis(g, f) else { continue };
            let gname = c.basis_name(g);
            let fname = c.basis_name(f);
            if lc.is_empty() {
                let _ = writeln!(s, "{gname} {fname} = 0");
            } else {
                let rendered: Vec<String> = lc
                    .iter()
                    .map(|(k, coeff)| {
                        let b = &c.hom_basis_names(f.src, g.tgt)[*k];
                        if *coeff == c.field().one() {
                            b.clone()
                        } else {
                            format!("{coeff} {b}")
                        }
                    })
                    .collect();
                let _ = writeln!(s, "{gname} {fname} = {}", rendered.join(" + "));
            }
        }
    }
    s
}

/// Command-line overrides: assert the field, truncate a one-endomorphism
/// window's dot budget, restrict a declared skeleton to a subset of names.
pub fn apply_overrides(
    p: &mut ParsedFile,
    field: Option<&str>,
    window_dots: Option<usize>,
    skeleton: Option<&str>,
) -> Result<()> {
    if let Some(spec) = field {
        let expected = parse_field(spec, 0)?;
        if expected != p.field {
            return Err(Error::FieldMismatch(
                format!("{expected}"),
                format!("{}", p.field),
            ));
        }
    }
    if let Some(budget) = window_dots {
        let Source::Diagram { cat, .. } = &mut p.source else {
            return Err(Error::Unsupported(
                "--window-dots applies to one-endomorphism windows".into(),
            ));
        };
        let homkern::diagram::Flavor::OneEndomorphism { deltas } = &cat.flavor else {
            return Err(Error::Unsupported(
                "--window-dots applies to one-endomorphism windows".into(),
            ));
        };
        if budget + 1 > deltas.len() {
            return Err(Error::DotBudget(format!(
                "the file only provides loop values up to {} dots",
                deltas.len() - 1
            )));
        }
        let truncated = deltas[..=budget].to_vec();
        *cat = DiagramCategory::one_endomorphism(p.field, truncated, cat.max_len)?;
    }
    if let Some(names) = skeleton {
        let Source::NoySkeleton { base, skeleton: sk, .. } = &mut p.source else {
            return Err(Error::Unsupported(
                "--skeleton applies to kernel-completion skeleton files".into(),
            ));
        };
        let wanted: Vec<&str> = names.split(',').map(str::trim).collect();
        let mut kept = Vec::new();
        for name in &wanted {
            let Some(i) = sk.names.iter().position(|n| n == name) else {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("skeleton has no object named {name}"),
                });
            };
            kept.push((sk.names[i].clone(), sk.objects[i].clone()));
        }
        *sk = noy_skeleton(base, kept)?;
    }
    Ok(())
}
