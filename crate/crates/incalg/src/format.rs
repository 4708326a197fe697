//! Text formats for posets, algebra elements, linear maps, automorphism
//! decompositions, subsets, product maps and boolean set maps.
//!
//! Every writer produces text its parser reads back to an equal value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use incalg_core::cartprod::{PiElement, PiMap, SetMap};
use incalg_core::{AutDecomposition, FiElement, IncidenceAlgebra, LinearMap, OrderMap, Poset, Ring, RingElem, SchurCoeffs};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError { line, message: message.into() }
    }
}

pub type FormatResult<T> = Result<T, FormatError>;

type NumberedLine<'a> = (usize, &'a str);

/// Non-blank lines with `#` comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// `elements: a b c` then `cover: x y` lines.
pub fn parse_poset(text: &str) -> FormatResult<Result<Poset, incalg_core::Error>> {
    let mut lines = content_lines(text);
    let (n0, first) = lines.next().ok_or_else(|| FormatError::new(1, "empty poset file"))?;
    let labels = parse_elements_line(n0, first)?;
    let mut covers = Vec::new();
    for (n, line) in lines {
        let rest = line
            .strip_prefix("cover:")
            .ok_or_else(|| FormatError::new(n, format!("expected `cover: x y`, found `{line}`")))?;
        let parts: Vec<&str> = rest.split_whitespace().collect();
        let [x, y] = parts[..] else {
            return Err(FormatError::new(n, "a cover line names exactly two elements"));
        };
        covers.push((index_in(&labels, x, n)?, index_in(&labels, y, n)?));
    }
    Ok(Poset::from_covers(labels, &covers))
}

fn parse_elements_line(n: usize, line: &str) -> FormatResult<Vec<String>> {
    let rest = line
        .strip_prefix("elements:")
        .ok_or_else(|| FormatError::new(n, format!("expected `elements: a b c ...`, found `{line}`")))?;
    let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    if labels.is_empty() {
        return Err(FormatError::new(n, "at least one element is required"));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(FormatError::new(n, format!("element `{l}` is listed twice")));
        }
        if l.contains(['{', '}', ',', ':', '(', ')']) || l == "->" {
            return Err(FormatError::new(n, format!("element label `{l}` uses a reserved character")));
        }
    }
    Ok(labels)
}

fn index_in(labels: &[String], label: &str, line: usize) -> FormatResult<usize> {
    labels.iter().position(|l| l == label).ok_or_else(|| FormatError::new(line, format!("unknown element `{label}`")))
}

pub fn write_poset(p: &Poset) -> String {
    let mut out = format!("elements: {}\n", p.labels().join(" "));
    for &(x, y) in p.covers() {
        let _ = writeln!(out, "cover: {} {}", p.label(x), p.label(y));
    }
    out
}

/// `sha256:` and the first 16 hex digits of the digest of [`write_poset`].
pub fn poset_fingerprint(p: &Poset) -> String {
    let digest = Sha256::digest(write_poset(p).as_bytes());
    let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn parse_value(ring: &Ring, token: &str, line: usize) -> FormatResult<RingElem> {
    let v: i64 = token.trim().parse().map_err(|_| FormatError::new(line, format!("`{token}` is not an integer")))?;
    let c = RingElem::from_canonical(v);
    ring.check(c).map_err(|e| FormatError::new(line, e.to_string()))?;
    Ok(c)
}

fn parse_coefficient_line(alg: &IncidenceAlgebra, n: usize, line: &str) -> FormatResult<(usize, RingElem)> {
    let (lhs, rhs) = line.split_once(':').ok_or_else(|| FormatError::new(n, format!("expected `x y : value`, found `{line}`")))?;
    let parts: Vec<&str> = lhs.split_whitespace().collect();
    let [x, y] = parts[..] else {
        return Err(FormatError::new(n, "a coefficient line names exactly two elements"));
    };
    let p = alg.poset();
    let (xi, yi) = (index_in(p.labels(), x, n)?, index_in(p.labels(), y, n)?);
    let idx = p.pair_index(xi, yi).ok_or_else(|| FormatError::new(n, format!("{x} <= {y} does not hold")))?;
    Ok((idx, parse_value(alg.ring(), rhs, n)?))
}

fn element_from_lines<'a>(alg: &IncidenceAlgebra, lines: impl IntoIterator<Item = (usize, &'a str)>) -> FormatResult<FiElement> {
    let mut coeffs = vec![RingElem::ZERO; alg.dim()];
    let mut seen = vec![false; alg.dim()];
    for (n, line) in lines {
        let (idx, v) = parse_coefficient_line(alg, n, line)?;
        if std::mem::replace(&mut seen[idx], true) {
            return Err(FormatError::new(n, "coefficient given twice"));
        }
        coeffs[idx] = v;
    }
    alg.from_coeffs(coeffs).map_err(|e| FormatError::new(0, e.to_string()))
}

/// Lines `x y : value`; omitted pairs are zero.
pub fn parse_element(alg: &IncidenceAlgebra, text: &str) -> FormatResult<FiElement> {
    element_from_lines(alg, content_lines(text))
}

pub fn write_element(alg: &IncidenceAlgebra, a: &FiElement) -> String {
    write_element_indented(alg, a, "")
}

fn write_element_indented(alg: &IncidenceAlgebra, a: &FiElement, indent: &str) -> String {
    let p = alg.poset();
    let mut out = String::new();
    for (i, c) in a.support() {
        let (x, y) = p.pairs()[i];
        let _ = writeln!(out, "{indent}{} {} : {c}", p.label(x), p.label(y));
    }
    out
}

/// Blocks `e x y ->` each followed by the image in element format. Every
/// comparable pair needs exactly one block.
pub fn parse_map(alg: &IncidenceAlgebra, text: &str) -> FormatResult<LinearMap> {
    let p = alg.poset();
    let mut blocks: BTreeMap<usize, (usize, Vec<NumberedLine<'_>>)> = BTreeMap::new();
    let mut current: Option<usize> = None;
    let mut last_line = 0;
    for (n, line) in content_lines(text) {
        last_line = n;
        if let Some(header) = line.strip_prefix("e ").and_then(|r| r.strip_suffix("->")) {
            let parts: Vec<&str> = header.split_whitespace().collect();
            let [x, y] = parts[..] else {
                return Err(FormatError::new(n, "a block header reads `e x y ->`"));
            };
            let (xi, yi) = (index_in(p.labels(), x, n)?, index_in(p.labels(), y, n)?);
            let idx = p.pair_index(xi, yi).ok_or_else(|| FormatError::new(n, format!("{x} <= {y} does not hold")))?;
            if blocks.insert(idx, (n, Vec::new())).is_some() {
                return Err(FormatError::new(n, format!("block for e {x} {y} given twice")));
            }
            current = Some(idx);
        } else {
            let idx = current.ok_or_else(|| FormatError::new(n, "coefficient line before the first `e x y ->` header"))?;
            blocks.get_mut(&idx).expect("open block").1.push((n, line));
        }
    }
    let mut images = Vec::with_capacity(alg.dim());
    for (i, &(x, y)) in p.pairs().iter().enumerate() {
        let (_, lines) = blocks
            .remove(&i)
            .ok_or_else(|| FormatError::new(last_line, format!("missing block `e {} {} ->`", p.label(x), p.label(y))))?;
        images.push(element_from_lines(alg, lines)?);
    }
    alg.map_from_images(images).map_err(|e| FormatError::new(0, e.to_string()))
}

pub fn write_map(alg: &IncidenceAlgebra, m: &LinearMap) -> String {
    let p = alg.poset();
    let mut out = String::new();
    for (i, &(x, y)) in p.pairs().iter().enumerate() {
        let _ = writeln!(out, "e {} {} ->", p.label(x), p.label(y));
        out.push_str(&write_element_indented(alg, m.image(i), "  "));
    }
    out
}

/// Blocks `rho:` (lines `x -> y`), `sigma:` (lines `x y : value` on the
/// covers) and `f:` (an element).
pub fn write_decomposition(alg: &IncidenceAlgebra, d: &AutDecomposition) -> String {
    let p = alg.poset();
    let mut out = String::from("rho:\n");
    for x in 0..p.len() {
        let _ = writeln!(out, "  {} -> {}", p.label(x), p.label(d.rho.apply(x)));
    }
    out.push_str("sigma:\n");
    for (&(x, y), v) in p.covers().iter().zip(d.sigma.cover_values(alg)) {
        let _ = writeln!(out, "  {} {} : {v}", p.label(x), p.label(y));
    }
    out.push_str("f:\n");
    out.push_str(&write_element_indented(alg, &d.f, "  "));
    out
}

pub fn parse_decomposition(alg: &IncidenceAlgebra, text: &str) -> FormatResult<AutDecomposition> {
    let p = alg.poset();
    let mut section = "";
    let mut rho: Vec<Option<usize>> = vec![None; p.len()];
    let mut cover_values: Vec<Option<RingElem>> = vec![None; p.covers().len()];
    let mut f_lines = Vec::new();
    let mut last = 0;
    for (n, line) in content_lines(text) {
        last = n;
        match line {
            "rho:" | "sigma:" | "f:" => {
                section = line;
                continue;
            }
            _ => {}
        }
        match section {
            "rho:" => {
                let (x, y) = line.split_once("->").ok_or_else(|| FormatError::new(n, "expected `x -> y`"))?;
                let xi = index_in(p.labels(), x.trim(), n)?;
                rho[xi] = Some(index_in(p.labels(), y.trim(), n)?);
            }
            "sigma:" => {
                let (idx, v) = parse_coefficient_line(alg, n, line)?;
                let pair = p.pairs()[idx];
                let c = p.covers().iter().position(|&c| c == pair).ok_or_else(|| FormatError::new(n, "sigma is given on covers only"))?;
                cover_values[c] = Some(v);
            }
            "f:" => f_lines.push((n, line)),
            _ => return Err(FormatError::new(n, "expected a `rho:`, `sigma:` or `f:` header")),
        }
    }
    let rho: Vec<usize> = rho
        .into_iter()
        .enumerate()
        .map(|(x, y)| y.ok_or_else(|| FormatError::new(last, format!("rho misses element {}", p.label(x)))))
        .collect::<FormatResult<_>>()?;
    let values: Vec<RingElem> = cover_values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let (x, y) = p.covers()[i];
            v.ok_or_else(|| FormatError::new(last, format!("sigma misses cover {} {}", p.label(x), p.label(y))))
        })
        .collect::<FormatResult<_>>()?;
    let sigma = SchurCoeffs::from_cover_values(alg, &values).map_err(|e| FormatError::new(last, e.to_string()))?;
    let f = element_from_lines(alg, f_lines)?;
    Ok(AutDecomposition { rho: OrderMap(rho), sigma, f })
}

/// `{a,c}` over the given labels; result is sorted.
pub fn parse_subset(labels: &[String], text: &str, line: usize) -> FormatResult<Vec<usize>> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| FormatError::new(line, format!("expected a subset literal `{{a,c}}`, found `{text}`")))?;
    let mut out = Vec::new();
    if !inner.trim().is_empty() {
        for tok in inner.split(',') {
            let i = index_in(labels, tok.trim(), line)?;
            if out.contains(&i) {
                return Err(FormatError::new(line, format!("`{}` repeated in subset", tok.trim())));
            }
            out.push(i);
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn write_subset(labels: &[String], xs: &[usize]) -> String {
    let names: Vec<&str> = xs.iter().map(|&x| labels[x].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

/// Product map file: `elements: ...` then one line per element, either
/// `x -> {..}` (image `e_A`) or `x -> (v1,...,vn)` (coordinates).
pub fn parse_pi_map(ring: &Ring, text: &str) -> FormatResult<(Vec<String>, PiMap)> {
    let mut lines = content_lines(text);
    let (n0, first) = lines.next().ok_or_else(|| FormatError::new(1, "empty map file"))?;
    let labels = parse_elements_line(n0, first)?;
    let k = labels.len();
    let mut images: Vec<Option<PiElement>> = vec![None; k];
    let mut last = n0;
    for (n, line) in lines {
        last = n;
        let (x, rhs) = line.split_once("->").ok_or_else(|| FormatError::new(n, "expected `x -> {..}` or `x -> (..)`"))?;
        let xi = index_in(&labels, x.trim(), n)?;
        let rhs = rhs.trim();
        let img = if rhs.starts_with('{') {
            PiElement::indicator(k, &parse_subset(&labels, rhs, n)?)
        } else {
            let inner = rhs
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| FormatError::new(n, format!("malformed image `{rhs}`")))?;
            let coords: Vec<RingElem> = inner.split(',').map(|t| parse_value(ring, t, n)).collect::<FormatResult<_>>()?;
            if coords.len() != k {
                return Err(FormatError::new(n, format!("expected {k} coordinates, found {}", coords.len())));
            }
            PiElement::new(coords)
        };
        if images[xi].replace(img).is_some() {
            return Err(FormatError::new(n, format!("image of `{}` given twice", x.trim())));
        }
    }
    let images: Vec<PiElement> = images
        .into_iter()
        .enumerate()
        .map(|(x, img)| img.ok_or_else(|| FormatError::new(last, format!("missing image of `{}`", labels[x]))))
        .collect::<FormatResult<_>>()?;
    let map = PiMap::from_images(images).map_err(|e| FormatError::new(last, e.to_string()))?;
    Ok((labels, map))
}

pub fn write_pi_map(labels: &[String], m: &PiMap) -> String {
    let mut out = format!("elements: {}\n", labels.join(" "));
    for (x, label) in labels.iter().enumerate() {
        let img = m.image(x);
        if img.coords().iter().all(|c| c.is_zero() || *c == RingElem::ONE) {
            let set: Vec<usize> = (0..img.len()).filter(|&z| img.coords()[z] == RingElem::ONE).collect();
            let _ = writeln!(out, "{label} -> {}", write_subset(labels, &set));
        } else {
            let coords: Vec<String> = img.coords().iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "{label} -> ({})", coords.join(","));
        }
    }
    out
}

/// Boolean set map file: `elements: ...` then `{..} -> {..}` for every
/// subset.
pub fn parse_set_map(text: &str) -> FormatResult<(Vec<String>, SetMap)> {
    let mut lines = content_lines(text);
    let (n0, first) = lines.next().ok_or_else(|| FormatError::new(1, "empty set map file"))?;
    let labels = parse_elements_line(n0, first)?;
    let n = labels.len();
    if n > incalg_core::cartprod::MAX_SET_MAP_POINTS {
        return Err(FormatError::new(n0, format!("at most {} elements", incalg_core::cartprod::MAX_SET_MAP_POINTS)));
    }
    let mask = |xs: &[usize]| xs.iter().fold(0u32, |m, &x| m | 1 << x);
    let mut images: Vec<Option<u32>> = vec![None; 1 << n];
    let mut last = n0;
    for (ln, line) in lines {
        last = ln;
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| FormatError::new(ln, "expected `{..} -> {..}`"))?;
        let from = mask(&parse_subset(&labels, lhs, ln)?);
        let to = mask(&parse_subset(&labels, rhs, ln)?);
        if images[from as usize].replace(to).is_some() {
            return Err(FormatError::new(ln, format!("image of {} given twice", lhs.trim())));
        }
    }
    let images: Vec<u32> = images
        .into_iter()
        .enumerate()
        .map(|(s, img)| {
            let set: Vec<usize> = (0..n).filter(|&x| s >> x & 1 == 1).collect();
            img.ok_or_else(|| FormatError::new(last, format!("missing image of {}", write_subset(&labels, &set))))
        })
        .collect::<FormatResult<_>>()?;
    let map = SetMap::new(n, images).map_err(|e| FormatError::new(last, e.to_string()))?;
    Ok((labels, map))
}

pub fn write_set_map(labels: &[String], m: &SetMap) -> String {
    let n = labels.len();
    let set = |s: u32| -> Vec<usize> { (0..n).filter(|&x| s >> x & 1 == 1).collect() };
    let mut out = format!("elements: {}\n", labels.join(" "));
    for (s, &img) in m.images().iter().enumerate() {
        let _ = writeln!(out, "{} -> {}", write_subset(labels, &set(s as u32)), write_subset(labels, &set(img)));
    }
    out
}
