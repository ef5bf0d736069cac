//! Text formats for groups, representation tuples, UBBs and covering designs.
//!
//! All formats are line based; `#` starts a comment line and blank lines are
//! ignored.
//!
//! Group file:
//! ```text
//! degree 8
//! name ASL32
//! gen (2,5)(4,7)
//! gen [2,1,4,3,6,5,8,7]
//! ```
//!
//! Representation tuple, component 1 first; each `map i` block lists the
//! images in component `i`'s group of component 1's generators, in order:
//! ```text
//! reptuple ASL32
//! group asl32.grp
//! group asl32.grp
//! map 2
//! (1,3)(2,7)(4,5)(6,8)
//! ...
//! end
//! psi 2 [1,2,3,4,5,6,7,8]
//! ```
//!
//! UBB file: `ubb <group-name> strength <r>` then one base per line.
//! Covering design: `cover <n> <k> <r>` then one block per line.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Base, PermutationGroup};
use crate::perm::Permutation;
use crate::twisted::{ComponentSpec, PointBijection, TwistedCode};
use crate::ubb::{CoveringDesign, Ubb};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a number, found `{tok}`")))
}

fn parse_row(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_usize(line, t))
        .collect()
}

pub fn parse_group(text: &str) -> Result<PermutationGroup> {
    let mut degree = None;
    let mut name = String::from("G");
    let mut gens = Vec::new();
    for (line, l) in content_lines(text) {
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match key {
            "degree" => degree = Some(parse_usize(line, rest)?),
            "name" => name = rest.to_string(),
            "gen" => {
                let n = degree.ok_or_else(|| Error::parse(line, "`gen` before `degree`"))?;
                gens.push(Permutation::parse(rest, n).map_err(|e| Error::parse(line, e.to_string()))?);
            }
            other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(0, "missing `degree`"))?;
    PermutationGroup::new(name, degree, gens)
}

pub fn write_group(group: &PermutationGroup) -> String {
    let mut out = format!("degree {}\nname {}\n", group.degree(), group.name());
    for g in group.generators() {
        let _ = writeln!(out, "gen {g}");
    }
    out
}

pub fn load_group(path: impl AsRef<Path>) -> Result<PermutationGroup> {
    parse_group(&std::fs::read_to_string(path)?)
}

/// Parsed form of a representation-tuple file before groups are resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepTupleFile {
    pub name: String,
    pub groups: Vec<String>,
    /// `(component, generator images)` for components 2..λ, 1-based.
    pub maps: Vec<(usize, Vec<String>)>,
    pub psis: Vec<(usize, Vec<usize>)>,
}

pub fn parse_rep_tuple_file(text: &str) -> Result<RepTupleFile> {
    let mut file = RepTupleFile {
        name: String::from("Tw"),
        groups: Vec::new(),
        maps: Vec::new(),
        psis: Vec::new(),
    };
    let mut open_map: Option<(usize, Vec<String>)> = None;
    for (line, l) in content_lines(text) {
        if let Some((_, images)) = open_map.as_mut() {
            if l == "end" {
                file.maps.push(open_map.take().expect("open map block"));
            } else {
                images.push(l.to_string());
            }
            continue;
        }
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match key {
            "reptuple" => file.name = rest.to_string(),
            "group" => file.groups.push(rest.to_string()),
            "map" => open_map = Some((parse_usize(line, rest)?, Vec::new())),
            "psi" => {
                let (idx, list) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| Error::parse(line, "expected `psi <i> [..]`"))?;
                let list = list.trim().trim_start_matches('[').trim_end_matches(']');
                file.psis.push((parse_usize(line, idx)?, parse_row(line, list)?));
            }
            other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
        }
    }
    if open_map.is_some() {
        return Err(Error::parse(0, "unterminated `map` block"));
    }
    if file.groups.is_empty() {
        return Err(Error::parse(0, "no `group` lines"));
    }
    Ok(file)
}

/// Builds the code, resolving group names through `resolve`. Components that
/// name the same group share one `PermutationGroup`.
pub fn build_rep_tuple(
    file: &RepTupleFile,
    mut resolve: impl FnMut(&str) -> Result<PermutationGroup>,
    verify_psi: bool,
) -> Result<TwistedCode> {
    let mut cache: HashMap<&str, Arc<PermutationGroup>> = HashMap::new();
    let mut groups = Vec::new();
    for name in &file.groups {
        let g = match cache.get(name.as_str()) {
            Some(g) => g.clone(),
            None => {
                let g = Arc::new(resolve(name)?);
                cache.insert(name, g.clone());
                g
            }
        };
        groups.push(g);
    }
    let lambda = groups.len();
    let g1 = groups[0].clone();
    let mut others = Vec::new();
    for (i, group) in groups.iter().enumerate().skip(1) {
        let comp = i + 1;
        let images = match file.maps.iter().find(|(c, _)| *c == comp) {
            Some((_, imgs)) => imgs
                .iter()
                .map(|s| Permutation::parse(s, g1.degree()))
                .collect::<Result<Vec<_>>>()?,
            None if Arc::ptr_eq(group, &g1) => g1.generators().to_vec(),
            None => return Err(Error::Invalid(format!("missing `map {comp}` block"))),
        };
        let psi = file
            .psis
            .iter()
            .find(|(c, _)| *c == comp)
            .map(|(_, list)| PointBijection::from_list(list))
            .transpose()?;
        others.push(ComponentSpec {
            group: group.clone(),
            generator_images: images,
            psi,
        });
    }
    if let Some((c, _)) = file.maps.iter().find(|(c, _)| *c < 2 || *c > lambda) {
        return Err(Error::Invalid(format!("`map {c}` names no component")));
    }
    TwistedCode::new(file.name.clone(), g1, others, verify_psi)
}

pub fn load_rep_tuple(path: impl AsRef<Path>, verify_psi: bool) -> Result<TwistedCode> {
    let path = path.as_ref();
    let file = parse_rep_tuple_file(&std::fs::read_to_string(path)?)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    build_rep_tuple(&file, |name| load_group(dir.join(name)), verify_psi)
}

/// Writes a tuple file for `code`, naming component groups with `group_file`.
pub fn write_rep_tuple(code: &TwistedCode, mut group_file: impl FnMut(&PermutationGroup) -> String) -> String {
    let mut out = format!("reptuple {}\n", code.name());
    for c in code.components() {
        let _ = writeln!(out, "group {}", group_file(c.group()));
    }
    for (i, c) in code.components().iter().enumerate().skip(1) {
        let _ = writeln!(out, "map {}", i + 1);
        for img in c.alpha().generator_images() {
            let _ = writeln!(out, "{img}");
        }
        out.push_str("end\n");
        if !c.psi().is_identity() {
            let list: Vec<String> = c.psi().list_form().iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "psi {} [{}]", i + 1, list.join(","));
        }
    }
    out
}

pub fn parse_ubb(text: &str) -> Result<Ubb> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| Error::parse(0, "empty UBB file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let (name, strength) = match toks.as_slice() {
        ["ubb", name @ .., "strength", r] if !name.is_empty() => (name.join(" "), parse_usize(line, r)?),
        _ => return Err(Error::parse(line, "expected `ubb <group> strength <r>`")),
    };
    let bases = lines
        .map(|(line, l)| Base::new(parse_row(line, l)?).map_err(|e| Error::parse(line, e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ubb::new(name, strength, bases))
}

pub fn write_ubb(ubb: &Ubb) -> String {
    let mut out = format!("ubb {} strength {}\n", ubb.group_name(), ubb.strength());
    for b in ubb.bases() {
        let row: Vec<String> = b.points().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn load_ubb(path: impl AsRef<Path>) -> Result<Ubb> {
    parse_ubb(&std::fs::read_to_string(path)?)
}

pub fn parse_cover(text: &str) -> Result<CoveringDesign> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| Error::parse(0, "empty cover file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let ["cover", n, k, r] = toks.as_slice() else {
        return Err(Error::parse(line, "expected `cover <n> <k> <r>`"));
    };
    let (n, k, r) = (parse_usize(line, n)?, parse_usize(line, k)?, parse_usize(line, r)?);
    let blocks = lines.map(|(line, l)| parse_row(line, l)).collect::<Result<Vec<_>>>()?;
    CoveringDesign::new(n, k, r, blocks)
}

pub fn write_cover(cover: &CoveringDesign) -> String {
    let mut out = format!("cover {} {} {}\n", cover.n(), cover.block_size(), cover.strength());
    for b in cover.blocks() {
        let row: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn load_cover(path: impl AsRef<Path>) -> Result<CoveringDesign> {
    parse_cover(&std::fs::read_to_string(path)?)
}
