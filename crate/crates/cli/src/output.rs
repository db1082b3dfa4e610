use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Round-trip exact scientific notation (`-0` prints as `0`).
pub fn num(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map_or_else(String::new, num)
}

pub fn csv_writer(w: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// Write to `path`, or to `fallback` when no path was given.
pub fn emit(
    path: Option<&Path>,
    fallback: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            body(&mut f)?;
            f.flush()
        }
        None => body(fallback),
    }
}
