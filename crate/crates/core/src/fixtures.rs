//! The shipped data files, embedded at compile time.
//!
//! Keys are file stems: `groups/<key>.grp`, `reps/<key>.rep`,
//! `ubbs/<key>.ubb`, `covers/<key>.cov`.

use std::sync::Arc;

use crate::decoder::DecoderState;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::io;
use crate::twisted::TwistedCode;
use crate::ubb::{CoveringDesign, Ubb};

macro_rules! embed {
    ($dir:literal, $ext:literal; $($key:literal),* $(,)?) => {
        &[$(($key, include_str!(concat!("../data/", $dir, "/", $key, ".", $ext)))),*]
    };
}

const GROUPS: &[(&str, &str)] = embed!("groups", "grp";
    "pgl2_7", "psl2_11", "psl2_11_natural", "m12", "a7", "2_4_a6", "2_4_s6", "m22", "s6", "a6", "asl3_2");
const REPS: &[(&str, &str)] = embed!("reps", "rep";
    "psl2_11", "m12", "a7", "2_4_a6", "2_4_s6", "m22", "s6", "a6", "asl3_2");
const UBBS: &[(&str, &str)] = embed!("ubbs", "ubb";
    "pgl2_7", "psl2_11", "m12", "a7", "2_4_a6", "2_4_s6", "m22", "s6", "a6", "asl3_2");
const COVERS: &[(&str, &str)] = embed!("covers", "cov";
    "psl2_11", "m12", "a7", "2_4_a6", "2_4_s6", "2_4_s6_scrambled", "m22");

/// Decoding trace of the ASL(3,2) example word.
pub const EXAMPLE5_TRACE: &str = include_str!("../data/traces/example5.log");

/// The printed table values.
pub const PAPER_TABLES: &str = include_str!("../data/tables.tsv");

/// Keys of the codes of Table 1, then Table 2.
pub const TABLE1_KEYS: &[&str] = &["psl2_11", "m12", "a7", "2_4_a6", "2_4_s6", "m22"];
pub const TABLE2_KEYS: &[&str] = &["s6", "a6", "asl3_2"];

pub fn code_keys() -> impl Iterator<Item = &'static str> {
    TABLE1_KEYS.iter().chain(TABLE2_KEYS).copied()
}

fn lookup(table: &'static [(&str, &str)], kind: &str, key: &str) -> Result<&'static str> {
    table
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::Invalid(format!("no {kind} fixture named `{key}`")))
}

pub fn group_text(key: &str) -> Result<&'static str> {
    lookup(GROUPS, "group", key)
}

pub fn group(key: &str) -> Result<PermutationGroup> {
    io::parse_group(group_text(key)?)
}

pub fn code_text(key: &str) -> Result<&'static str> {
    lookup(REPS, "representation tuple", key)
}

/// A fixture code; `group` lines resolve by file stem.
pub fn code(key: &str) -> Result<TwistedCode> {
    let file = io::parse_rep_tuple_file(code_text(key)?)?;
    io::build_rep_tuple(
        &file,
        |name| {
            let stem = name.rsplit('/').next().unwrap_or(name);
            group(stem.strip_suffix(".grp").unwrap_or(stem))
        },
        false,
    )
}

pub fn ubb_text(key: &str) -> Result<&'static str> {
    lookup(UBBS, "UBB", key)
}

pub fn ubb(key: &str) -> Result<Ubb> {
    io::parse_ubb(ubb_text(key)?)
}

pub fn cover_text(key: &str) -> Result<&'static str> {
    lookup(COVERS, "cover", key)
}

pub fn cover(key: &str) -> Result<CoveringDesign> {
    io::parse_cover(cover_text(key)?)
}

/// The fixture code with its UBB, strength-checked.
pub fn decoder(key: &str) -> Result<DecoderState> {
    DecoderState::new(Arc::new(code(key)?), ubb(key)?)
}
