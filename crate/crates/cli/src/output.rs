//! CSV output. Values use 17 significant digits so they read back exactly.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use thinfilm_core::fvm::ConvergenceRow;
use thinfilm_core::State;

pub const FIELD_HEADER: &str = "x,f,b,g,q";
pub const CONVERGENCE_HEADER: &str =
    "scheme,cells,dx,err_f,err_b,err_g,err_q,order_f,order_b,order_g,order_q";

pub fn write_profile<W: Write>(mut w: W, xs: &[f64], states: &[State]) -> io::Result<()> {
    writeln!(w, "{FIELD_HEADER}")?;
    for (x, s) in xs.iter().zip(states) {
        writeln!(
            w,
            "{x:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.f, s.b, s.g, s.q
        )?;
    }
    w.flush()
}

pub fn write_convergence<W: Write>(mut w: W, rows: &[ConvergenceRow]) -> io::Result<()> {
    writeln!(w, "{CONVERGENCE_HEADER}")?;
    for r in rows {
        write!(w, "{},{},{:.16e}", r.scheme, r.cells, r.dx)?;
        for e in r.errors {
            write!(w, ",{e:.16e}")?;
        }
        match r.orders {
            Some(o) => {
                for v in o {
                    write!(w, ",{v:.16e}")?;
                }
            }
            None => write!(w, ",,,,")?,
        }
        writeln!(w)?;
    }
    w.flush()
}

/// Writes through `body` to `path`, or to stdout when `path` is `None`.
pub fn emit<F>(path: Option<&Path>, body: F) -> io::Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)
        }
    }
}

/// Parses a profile written by [`write_profile`].
pub fn read_profile(text: &str) -> Result<(Vec<f64>, Vec<State>), String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(FIELD_HEADER) => {}
        other => return Err(format!("bad header {other:?}")),
    }
    let mut xs = Vec::new();
    let mut states = Vec::new();
    for (i, line) in lines.enumerate() {
        let vals: Vec<f64> = line
            .split(',')
            .map(|v| v.parse::<f64>().map_err(|e| format!("row {}: {e}", i + 2)))
            .collect::<Result<_, _>>()?;
        if vals.len() != 5 {
            return Err(format!("row {}: expected 5 columns", i + 2));
        }
        xs.push(vals[0]);
        states.push(State::new(vals[1], vals[2], vals[3], vals[4]));
    }
    Ok((xs, states))
}
