//! Command-line front end. Exit codes: 0 verified or succeeded, 1 refuted,
//! 2 bad input or usage.

use crate::bd::{CertificateReport, Refutation, TriadCertificate};
use crate::fixtures::{fixture_counterexample, fixture_vd_triad};
use crate::io::{matrix_to_json, IoError, TetModuleDocument, TriadDocument};
use crate::linalg::{format_rational, parse_rational, RMatrix, Rational};
use crate::spectral::{check_recurrence, reduce_triad};
use crate::synth::{synthesize_tet, SynthError, DEFAULT_ASSIGNMENT};
use crate::tet::{corner_triad, irreducible_sufficient, spectrum_diameter, verify_tet_relations};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: u8 = 0;
pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "bdtet",
    version,
    about = "Exact verification of bidiagonal triads and tetrahedron-algebra modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on triad documents.
    #[command(subcommand)]
    Triad(TriadCmd),
    /// Operations on tetrahedron module documents.
    #[command(subcommand)]
    Tet(TetCmd),
    /// Write example documents.
    #[command(subcommand)]
    Fixture(FixtureCmd),
}

#[derive(Subcommand, Debug)]
enum TriadCmd {
    /// Check the BD triad axioms and print the certificate.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write the affine-equivalent reduced triad.
    Reduce {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a module from a thin reduced triad.
    Synthesize {
        file: PathBuf,
        /// Vertex permutation r s t u; the triad sits at corner u.
        #[arg(long, default_value = "0123")]
        corner: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum TetCmd {
    /// Check the defining relations, spectra and irreducibility.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Verify the four corner triads.
    Corners {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureCmd {
    /// Thin reduced triad on V(d) with parameters beta, gamma.
    VdTriad {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Non-thin triad (triad.json) and candidate X02 (x02.json).
    Counterexample {
        #[arg(short, long)]
        output: PathBuf,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

// Output failures on stdout/stderr are ignored, as `println!` would panic.
macro_rules! say {
    ($dst:expr, $($arg:tt)*) => {{ let _ = writeln!($dst, $($arg)*); }};
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    let mut io = Io { out, err };
    let result = match cli.command {
        Command::Triad(TriadCmd::Verify { file, json }) => triad_verify(&mut io, &file, json),
        Command::Triad(TriadCmd::Reduce { file, output, json }) => {
            triad_reduce(&mut io, &file, &output, json)
        }
        Command::Triad(TriadCmd::Synthesize {
            file,
            corner,
            output,
            json,
        }) => triad_synthesize(&mut io, &file, &corner, &output, json),
        Command::Tet(TetCmd::Verify { file, json }) => tet_verify(&mut io, &file, json),
        Command::Tet(TetCmd::Corners { file, json }) => tet_corners(&mut io, &file, json),
        Command::Fixture(FixtureCmd::VdTriad {
            d,
            beta,
            gamma,
            output,
        }) => fixture_vd(&mut io, d, &beta, &gamma, &output),
        Command::Fixture(FixtureCmd::Counterexample { output }) => {
            fixture_counter(&mut io, &output)
        }
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            say!(io.err, "error: {message}");
            EXIT_INPUT
        }
    }
}

type CmdResult = Result<u8, String>;

fn input_err(e: IoError) -> String {
    e.to_string()
}

fn emit_json(io: &mut Io, value: &Value) {
    say!(
        io.out,
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn rational_list(xs: &[Rational]) -> String {
    xs.iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_certificate(io: &mut Io, cert: &TriadCertificate) {
    let shape: Vec<String> = cert.shape.iter().map(usize::to_string).collect();
    say!(io.out, "diameter: {}", cert.diameter);
    say!(io.out, "shape: ({})", shape.join(","));
    say!(io.out, "thin: {}", yes_no(cert.thin));
    say!(io.out, "reduced: {}", yes_no(cert.is_reduced()));
    for (name, seq) in ["A", "A'", "A''"].iter().zip(cert.sequences()) {
        say!(io.out, "sequence {name:<3}: {}", rational_list(&seq));
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn refutation_json(r: &Refutation) -> Value {
    let mut v = json!({ "verified": false, "refutation": r.to_string() });
    if let Refutation::NotBijective { witness, .. } = r {
        v["witness"] = json!(witness.to_strings());
    }
    v
}

fn certificate_json(cert: &TriadCertificate) -> Value {
    let report: CertificateReport = cert.to_report();
    serde_json::to_value(report).expect("serializable")
}

fn triad_verify(io: &mut Io, file: &Path, json: bool) -> CmdResult {
    let doc = TriadDocument::load(file).map_err(input_err)?;
    match doc.triad.verify() {
        Ok(cert) => {
            let rec = check_recurrence(&cert);
            if json {
                let ratios: Vec<Vec<String>> = rec
                    .ratios
                    .iter()
                    .map(|r| r.iter().map(format_rational).collect())
                    .collect();
                emit_json(
                    io,
                    &json!({
                        "verified": true,
                        "certificate": certificate_json(&cert),
                        "recurrence": { "holds": rec.holds, "ratios": ratios },
                    }),
                );
            } else {
                say!(io.out, "BD triad: verified");
                print_certificate(io, &cert);
                if cert.diameter >= 2 {
                    say!(io.out, "difference ratios all 1: {}", yes_no(rec.holds));
                }
            }
            Ok(EXIT_OK)
        }
        Err(r) => {
            if json {
                emit_json(io, &refutation_json(&r));
            } else {
                say!(io.out, "BD triad: refuted");
                say!(io.out, "reason: {r}");
            }
            Ok(EXIT_REFUTED)
        }
    }
}

fn triad_reduce(io: &mut Io, file: &Path, output: &Path, json: bool) -> CmdResult {
    let doc = TriadDocument::load(file).map_err(input_err)?;
    let cert = match doc.triad.verify() {
        Ok(c) => c,
        Err(r) => {
            if json {
                emit_json(io, &refutation_json(&r));
            } else {
                say!(io.out, "BD triad: refuted");
                say!(io.out, "reason: {r}");
            }
            return Ok(EXIT_REFUTED);
        }
    };
    let red = match reduce_triad(&doc.triad, &cert) {
        Ok(red) => red,
        Err(e) => {
            say!(io.out, "reduction failed: {e}");
            return Ok(EXIT_REFUTED);
        }
    };
    let out_doc = TriadDocument {
        triad: red.triad.clone(),
        metadata: doc.metadata.clone(),
    };
    out_doc.save(output).map_err(input_err)?;
    let witnesses: Vec<[String; 2]> = red
        .witnesses
        .iter()
        .map(|(r, s)| [format_rational(r), format_rational(s)])
        .collect();
    if json {
        emit_json(
            io,
            &json!({
                "reduced": true,
                "witnesses": witnesses,
                "certificate": certificate_json(&red.certificate),
                "output": output.display().to_string(),
            }),
        );
    } else {
        say!(io.out, "reduced triad written to {}", output.display());
        for (name, [r, s]) in ["A", "A'", "A''"].iter().zip(&witnesses) {
            say!(io.out, "{name:<3} -> ({r}) * {name} + ({s}) I");
        }
        print_certificate(io, &red.certificate);
    }
    Ok(EXIT_OK)
}

fn parse_corner(text: &str) -> Result<[usize; 4], String> {
    let digits: Vec<usize> = text
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| format!("--corner must be four digits, got {text:?}"))?;
    let perm: [usize; 4] = digits
        .try_into()
        .map_err(|_| format!("--corner must be four digits, got {text:?}"))?;
    let mut sorted = perm;
    sorted.sort_unstable();
    if sorted != [0, 1, 2, 3] {
        return Err(format!(
            "--corner must be a permutation of 0123, got {text:?}"
        ));
    }
    Ok(perm)
}

fn triad_synthesize(
    io: &mut Io,
    file: &Path,
    corner: &str,
    output: &Path,
    json: bool,
) -> CmdResult {
    let assignment = if corner == "0123" {
        DEFAULT_ASSIGNMENT
    } else {
        parse_corner(corner)?
    };
    let doc = TriadDocument::load(file).map_err(input_err)?;
    let res = match synthesize_tet(&doc.triad, assignment) {
        Ok(res) => res,
        Err(e @ SynthError::NotReduced { .. }) => {
            return Err(format!("{e}; run `triad reduce` first"));
        }
        Err(e) => {
            if json {
                emit_json(io, &json!({ "synthesized": false, "error": e.to_string() }));
            } else {
                say!(io.out, "synthesis refuted: {e}");
            }
            return Ok(EXIT_REFUTED);
        }
    };
    TetModuleDocument::new(res.module.clone())
        .save(output)
        .map_err(input_err)?;
    let scalars = res
        .raising
        .as_ref()
        .map(|rd| (format_rational(&rd.c), format_rational(&rd.a)));
    if json {
        let lemmas: Vec<Value> = res
            .dolan_grady_lemmas
            .iter()
            .map(|(id, ok)| json!({ "identity": id, "holds": ok }))
            .collect();
        let corners: Vec<Value> = res
            .corner_certificates
            .iter()
            .map(certificate_json)
            .collect();
        emit_json(
            io,
            &json!({
                "synthesized": true,
                "output": output.display().to_string(),
                "assignment": assignment,
                "diameter": res.diameter,
                "c": scalars.as_ref().map(|s| s.0.clone()),
                "a": scalars.as_ref().map(|s| s.1.clone()),
                "B": res.b.to_strings(),
                "Bprime": res.b_prime.to_strings(),
                "Bdprime": res.b_dprime.to_strings(),
                "b_solution_dimension": res.b_solution_dimension,
                "relations_checked": res.relations.checked,
                "algebra_dimension": res.irreducibility.algebra_dimension,
                "dolan_grady_lemmas": lemmas,
                "corner_certificates": corners,
            }),
        );
    } else {
        say!(io.out, "module written to {}", output.display());
        say!(io.out, "diameter: {}", res.diameter);
        if let Some((c, a)) = &scalars {
            say!(io.out, "c = {c}, a = {a}");
        }
        say!(io.out, "B =\n{}", res.b);
        say!(io.out, "B' =\n{}", res.b_prime);
        say!(io.out, "B'' =\n{}", res.b_dprime);
        say!(
            io.out,
            "relations: {} of {} hold",
            res.relations.checked,
            res.relations.checked
        );
        say!(
            io.out,
            "irreducible: certified (algebra dimension {})",
            res.irreducibility.algebra_dimension
        );
        say!(io.out, "corner triads: 4 reduced BD triads");
    }
    Ok(EXIT_OK)
}

fn tet_verify(io: &mut Io, file: &Path, json: bool) -> CmdResult {
    let doc = TetModuleDocument::load(file).map_err(input_err)?;
    let m = &doc.module;
    let report = verify_tet_relations(m);
    let spectrum = spectrum_diameter(m);
    let irr = irreducible_sufficient(m);
    if json {
        let violations: Vec<Value> = report
            .violations
            .iter()
            .map(
                |(id, defect)| json!({ "relation": id.to_string(), "defect": defect.to_strings() }),
            )
            .collect();
        emit_json(
            io,
            &json!({
                "verified": report.passed(),
                "antisymmetry_ok": report.antisymmetry_ok,
                "corner_ok": report.corner_ok,
                "dolan_grady_ok": report.dolan_grady_ok,
                "checked": report.checked,
                "violations": violations,
                "diameter": spectrum.as_ref().ok(),
                "spectrum_error": spectrum.as_ref().err().map(ToString::to_string),
                "irreducible_certified": irr.certified,
                "algebra_dimension": irr.algebra_dimension,
            }),
        );
    } else {
        say!(
            io.out,
            "relations: {} of {} hold",
            report.checked - report.violations.len(),
            report.checked
        );
        for (id, defect) in &report.violations {
            say!(io.out, "violated: {id}\ndefect =\n{defect}");
        }
        match &spectrum {
            Ok(d) => say!(
                io.out,
                "spectrum: every generator has eigenvalues d-2i with d = {d}"
            ),
            Err(e) => say!(io.out, "spectrum: {e}"),
        }
        if irr.certified {
            say!(
                io.out,
                "irreducible: certified (algebra dimension {})",
                irr.algebra_dimension
            );
        } else {
            say!(
                io.out,
                "irreducible: not certified (algebra dimension {} < {})",
                irr.algebra_dimension,
                m.dim() * m.dim()
            );
        }
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_REFUTED
    })
}

fn tet_corners(io: &mut Io, file: &Path, json: bool) -> CmdResult {
    let doc = TetModuleDocument::load(file).map_err(input_err)?;
    let mut all_ok = true;
    let mut entries = Vec::new();
    for u in 0..4 {
        let triad = corner_triad(&doc.module, u).expect("vertex in range");
        let outcome = triad.verify();
        let ok = outcome.as_ref().is_ok_and(|c| c.is_reduced());
        all_ok &= ok;
        if json {
            entries.push(match &outcome {
                Ok(cert) => json!({ "vertex": u, "verified": true, "reduced": cert.is_reduced(), "certificate": certificate_json(cert) }),
                Err(r) => {
                    let mut v = refutation_json(r);
                    v["vertex"] = json!(u);
                    v
                }
            });
        } else {
            say!(io.out, "corner {u}:");
            match &outcome {
                Ok(cert) => print_certificate(io, cert),
                Err(r) => say!(io.out, "refuted: {r}"),
            }
        }
    }
    if json {
        emit_json(io, &json!({ "corners": entries, "all_reduced": all_ok }));
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_REFUTED })
}

fn fixture_vd(io: &mut Io, d: usize, beta: &str, gamma: &str, output: &Path) -> CmdResult {
    let beta = parse_rational(beta).map_err(|e| format!("--beta: {e}"))?;
    let gamma = parse_rational(gamma).map_err(|e| format!("--gamma: {e}"))?;
    let doc = fixture_vd_triad(d, &beta, &gamma).map_err(|e| e.to_string())?;
    doc.save(output).map_err(input_err)?;
    say!(io.out, "wrote {}", output.display());
    Ok(EXIT_OK)
}

fn fixture_counter(io: &mut Io, dir: &Path) -> CmdResult {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let (doc, x02) = fixture_counterexample();
    let triad_path = dir.join("triad.json");
    let x02_path = dir.join("x02.json");
    doc.save(&triad_path).map_err(input_err)?;
    write_matrix(&x02_path, "X02", &x02)?;
    say!(io.out, "wrote {}", triad_path.display());
    say!(io.out, "wrote {}", x02_path.display());
    Ok(EXIT_OK)
}

fn write_matrix(path: &Path, name: &str, m: &RMatrix) -> Result<(), String> {
    crate::io::write(path, &matrix_to_json(name, m)).map_err(input_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_parsing() {
        assert_eq!(parse_corner("3021").unwrap(), [3, 0, 2, 1]);
        assert!(parse_corner("0112").is_err());
        assert!(parse_corner("012").is_err());
        assert!(parse_corner("01a3").is_err());
        assert!(parse_corner("0124").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["bdtet", "triad"], &mut out, &mut err), EXIT_INPUT);
        assert_eq!(run(["bdtet", "--help"], &mut out, &mut err), EXIT_OK);
        assert!(String::from_utf8(out).unwrap().contains("triad"));
    }
}
