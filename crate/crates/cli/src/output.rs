use std::io::{self, Write};
use std::path::Path;

/// The CSV layouts written by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schema {
    Chartab,
    Measure,
    Report,
    /// Sampled W values binned by exact value.
    Histogram,
    /// Sampled partitions with their counts.
    Draws,
}

impl Schema {
    pub fn header(self) -> &'static [&'static str] {
        match self {
            Schema::Chartab => &["lambda", "mu", "chi"],
            Schema::Measure => &["lambda", "mass_num", "mass_den", "mass_float"],
            Schema::Report => &[
                "n",
                "kind",
                "specs",
                "exact_coeff_num",
                "exact_coeff_den",
                "radicand",
                "float",
                "limit_num",
                "limit_den",
                "abs_dev",
            ],
            Schema::Histogram => &["w_coeff_num", "w_coeff_den", "radicand", "w_float", "count"],
            Schema::Draws => &["lambda", "count"],
        }
    }
}

/// Writes `rows` under the schema's header, to `path` or to stdout.
pub fn emit_csv(rows: &[Vec<String>], schema: Schema, path: Option<&Path>) -> io::Result<()> {
    let header = schema.header();
    if let Some(bad) = rows.iter().find(|r| r.len() != header.len()) {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            format!("row has {} fields, schema has {}", bad.len(), header.len()),
        ));
    }
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}
