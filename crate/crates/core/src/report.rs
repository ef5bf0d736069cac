//! Recomputation of the parameter tables for the fixture codes.

use std::fmt;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::group::Distance;
use crate::ubb::STRENGTH_BUDGET;

/// One table row. `ubb_size` counts the shipped UBB's rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub table: u8,
    pub key: String,
    pub group: String,
    pub order: usize,
    pub n: usize,
    pub lambda: usize,
    pub delta_rep: usize,
    pub delta_tw: usize,
    pub r_tw: usize,
    pub r_prime: usize,
    pub b: usize,
    pub ubb_size: usize,
}

pub const COLUMNS: [&str; 9] = [
    "order",
    "n",
    "lambda",
    "delta_rep",
    "delta_tw",
    "r_tw",
    "r_prime",
    "b",
    "ubb_size",
];

impl TableRow {
    pub fn cells(&self) -> [usize; 9] {
        [
            self.order,
            self.n,
            self.lambda,
            self.delta_rep,
            self.delta_tw,
            self.r_tw,
            self.r_prime,
            self.b,
            self.ubb_size,
        ]
    }

    pub fn tsv(&self) -> String {
        let cells: Vec<String> = self.cells().iter().map(|c| c.to_string()).collect();
        format!("{}\t{}\t{}\t{}", self.table, self.key, self.group, cells.join("\t"))
    }
}

/// The printed rows from the embedded table file.
pub fn paper_rows() -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (i, line) in fixtures::PAPER_TABLES.lines().enumerate() {
        if line.is_empty() || line.starts_with('#') || line.starts_with("table\t") {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 12 {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected 12 fields, found {}", f.len()),
            });
        }
        let num = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("bad number `{s}`"),
            })
        };
        rows.push(TableRow {
            table: num(f[0])? as u8,
            key: f[1].into(),
            group: f[2].into(),
            order: num(f[3])?,
            n: num(f[4])?,
            lambda: num(f[5])?,
            delta_rep: num(f[6])?,
            delta_tw: num(f[7])?,
            r_tw: num(f[8])?,
            r_prime: num(f[9])?,
            b: num(f[10])?,
            ubb_size: num(f[11])?,
        });
    }
    Ok(rows)
}

fn finite(d: Distance, what: &str) -> Result<usize> {
    d.finite()
        .ok_or_else(|| Error::Invalid(format!("{what} is infinite for a one-element group")))
}

/// Recomputes a row from the fixture code and UBB. The UBB must consist of
/// bases and have strength `r'`; otherwise the row is an error.
pub fn compute_row(table: u8, key: &str) -> Result<TableRow> {
    let code = fixtures::code(key)?;
    let g = code.g1();
    let delta_tw = finite(code.delta_tw()?, "delta_tw")?;
    let params = crate::twisted::correction_params(delta_tw, code.lambda());
    let ubb = fixtures::ubb(key)?;
    ubb.check_bases(g)?;
    if !ubb
        .verify_strength_at(g.degree(), params.r_prime, STRENGTH_BUDGET)?
        .holds()
    {
        return Err(Error::InsufficientStrength {
            required: params.r_prime,
        });
    }
    Ok(TableRow {
        table,
        key: key.into(),
        group: g.name().into(),
        order: g.order()?,
        n: g.degree(),
        lambda: code.lambda(),
        delta_rep: finite(code.delta_rep()?, "delta_rep")?,
        delta_tw,
        r_tw: params.r_tw,
        r_prime: params.r_prime,
        b: g.base_size()?,
        ubb_size: ubb.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDiff {
    pub key: String,
    pub column: &'static str,
    pub paper: usize,
    pub computed: usize,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: paper {} computed {}",
            self.key, self.column, self.paper, self.computed
        )
    }
}

/// Cell-by-cell differences; rows match by key.
pub fn diff(paper: &[TableRow], computed: &[TableRow]) -> Vec<CellDiff> {
    let mut out = Vec::new();
    for c in computed {
        let Some(p) = paper.iter().find(|p| p.key == c.key) else {
            continue;
        };
        for ((column, pv), cv) in COLUMNS.iter().zip(p.cells()).zip(c.cells()) {
            if pv != cv {
                out.push(CellDiff {
                    key: c.key.clone(),
                    column,
                    paper: pv,
                    computed: cv,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub diffs: Vec<CellDiff>,
}

impl TableReport {
    pub fn tsv(&self) -> String {
        let mut out = format!("table\tkey\tgroup\t{}\n", COLUMNS.join("\t"));
        for r in &self.rows {
            out.push_str(&r.tsv());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for table in [1, 2] {
            writeln!(f, "Table {table}")?;
            writeln!(
                f,
                "{:<10} {:>7} {:>3} {:>3} {:>6} {:>5} {:>4} {:>3} {:>3} {:>4}",
                "group", "|G|", "n", "λ", "δ_rep", "δ_tw", "r_tw", "r'", "b", "|U|"
            )?;
            for r in self.rows.iter().filter(|r| r.table == table) {
                writeln!(
                    f,
                    "{:<10} {:>7} {:>3} {:>3} {:>6} {:>5} {:>4} {:>3} {:>3} {:>4}",
                    r.group, r.order, r.n, r.lambda, r.delta_rep, r.delta_tw, r.r_tw, r.r_prime, r.b, r.ubb_size
                )?;
            }
            writeln!(f)?;
        }
        if self.diffs.is_empty() {
            writeln!(f, "all cells match the printed tables")
        } else {
            for d in &self.diffs {
                writeln!(f, "MISMATCH {d}")?;
            }
            Ok(())
        }
    }
}

/// Recomputes every fixture row and diffs it against the printed values.
pub fn report_tables() -> Result<TableReport> {
    let paper = paper_rows()?;
    let keys = fixtures::TABLE1_KEYS
        .iter()
        .map(|k| (1, *k))
        .chain(fixtures::TABLE2_KEYS.iter().map(|k| (2, *k)));
    let rows = keys.map(|(t, k)| compute_row(t, k)).collect::<Result<Vec<_>>>()?;
    let diffs = diff(&paper, &rows);
    Ok(TableReport { rows, diffs })
}
