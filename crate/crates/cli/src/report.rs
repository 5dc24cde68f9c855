//! Validation of sweep CSVs and gnuplot script emission.

use std::fmt::Write as _;
use std::path::Path;

use crate::sweep::X_COLUMN;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let malformed = |line: u64, m: &str| CliError::Config(format!("malformed CSV at line {line}: {m}"));
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = reader.headers().map_err(|e| malformed(1, &e.to_string()))?;
        if header.is_empty() {
            return Err(CliError::Config("CSV is empty".into()));
        }
        let columns: Vec<String> = header.iter().map(str::to_string).collect();
        if columns.len() < 2 || columns[0] != X_COLUMN {
            return Err(malformed(
                1,
                &format!("header must start with `{X_COLUMN}` and name at least one quantity"),
            ));
        }
        if columns.iter().any(String::is_empty) {
            return Err(malformed(1, "empty column name"));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                malformed(line, &e.to_string())
            })?;
            let line = record.position().map_or(0, |p| p.line());
            let row = record
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|_| malformed(line, &format!("`{f}` is not a number")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(CliError::Config("CSV has a header but no rows".into()));
        }
        Ok(Self { columns, rows })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// One line per quantity column: name, rows, min, max.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (k, name) in self.columns.iter().enumerate().skip(1) {
            let col = self.rows.iter().map(|r| r[k]);
            let lo = col.clone().fold(f64::INFINITY, f64::min);
            let hi = col.fold(f64::NEG_INFINITY, f64::max);
            let _ = writeln!(out, "{name}\trows={}\tmin={lo}\tmax={hi}", self.rows.len());
        }
        out
    }
}

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

/// Standalone gnuplot script plotting every quantity column of `csv_path`
/// against 2θ/π.
pub fn plot_script(table: &CsvTable, csv_path: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set encoding utf8");
    let _ = writeln!(out, "set xlabel '2θ/π'");
    let _ = writeln!(out, "set ylabel 'bits'");
    let _ = writeln!(out, "set xrange [0:1]");
    let _ = writeln!(out, "set grid");
    let _ = writeln!(out, "set key best");
    let curves: Vec<String> = table
        .columns
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, name)| {
            let file = if k == 1 { quote(csv_path) } else { "''".to_string() };
            format!("{file} using 1:{} skip 1 with lines title {}", k + 1, quote(name))
        })
        .collect();
    let _ = writeln!(out, "plot {}", curves.join(", \\\n     "));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sweep_output() {
        let t = CsvTable::parse("two_theta_over_pi,fig2a\n0.0,0.0\n1.0,-1.0\n").unwrap();
        assert_eq!(t.columns, ["two_theta_over_pi", "fig2a"]);
        assert_eq!(t.rows, vec![vec![0.0, 0.0], vec![1.0, -1.0]]);
        assert!(t.summary().contains("fig2a\trows=2\tmin=-1\tmax=0"));
    }

    #[test]
    fn rejects_bad_tables() {
        for text in [
            "",
            "\n\n",
            "two_theta_over_pi,fig2a\n",
            "theta,fig2a\n0,0\n",
            "two_theta_over_pi\n0\n",
            "two_theta_over_pi,fig2a\n0,0,1\n",
            "two_theta_over_pi,fig2a\n0,abc\n",
            "two_theta_over_pi,\n0,1\n",
        ] {
            assert!(matches!(CsvTable::parse(text), Err(CliError::Config(_))), "{text:?}");
        }
    }

    #[test]
    fn script_has_one_curve_per_column() {
        let one = CsvTable::parse("two_theta_over_pi,fig2a\n0,0\n").unwrap();
        let s = plot_script(&one, "fig2a.csv");
        assert!(s.contains("set xlabel '2θ/π'"));
        assert_eq!(s.matches(" with lines ").count(), 1);
        assert!(s.contains("plot 'fig2a.csv' using 1:2 skip 1 with lines title 'fig2a'"));

        let two = CsvTable::parse("two_theta_over_pi,fig1a,ea_minus_ef_ac\n0,0,0\n").unwrap();
        let s = plot_script(&two, "it's.csv");
        assert_eq!(s.matches(" with lines ").count(), 2);
        assert!(s.contains("'it''s.csv' using 1:2"));
        assert!(s.contains("'' using 1:3 skip 1 with lines title 'ea_minus_ef_ac'"));
    }
}
