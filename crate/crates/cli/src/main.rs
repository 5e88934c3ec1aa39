use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use e8forms::batch::{parse_batch, Record};
use e8forms::descent::{antidiagonal, crux_form, descent_form, QuadExtMatrix};
use e8forms::e8kill::{killing_report, tits_construction, E8Input, KillError, KillingReport, TitsInput, TitsReport};
use e8forms::jinv::{default_order, search_equality, FactorCount, SearchReport};
use e8forms::linalg::Matrix;
use e8forms::qform::{BaseField, QForm, Quaternion};
use e8forms::rootsys::{c4_centralizer, embedding_table, verify_embedding, Embedding, SystemLabel};
use e8forms::scalar::{int, rat};
use e8forms::verify::{parse_suites, run, summarize, Status};

const OK: u8 = 0;
const DATA_ERROR: u8 = 2;
const LOGIC_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "e8forms", version, about = "Killing forms of E8 groups built from quaternion algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Killing form, kappa, Rost class and classification for (Q1..Q4, c).
    Construct(ConstructArgs),
    /// Reduced Killing form of the Tits construction from gamma3, phi3 and phi5.
    Tits(TitsArgs),
    /// Descends the form S_2 along Q(sqrt a) with the cocycle [[0, c], [1/c, 0]].
    Descent(DescentArgs),
    /// Descends S_8 with the 8 x 8 antidiagonal cocycle built from b.
    Crux(CruxArgs),
    /// Checks the coroot embedding tables and the C4 centralizer.
    Roots(RootsArgs),
    /// Searches for equality of the two generating functions.
    Appendix(AppendixArgs),
    /// Runs the named checks of one suite or of all suites.
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Quaternion algebra (a, b) written `a,b`; likewise q2..q4.
    #[arg(long, allow_hyphen_values = true, default_value = "1,1")]
    q1: Quaternion,
    #[arg(long, allow_hyphen_values = true, default_value = "1,1")]
    q2: Quaternion,
    #[arg(long, allow_hyphen_values = true, default_value = "1,1")]
    q3: Quaternion,
    #[arg(long, allow_hyphen_values = true, default_value = "1,1")]
    q4: Quaternion,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    c: i64,
    /// Q or R.
    #[arg(long, default_value = "Q")]
    field: BaseField,
    #[arg(long)]
    json: bool,
    /// File of records, one per line.
    #[arg(long)]
    batch: Option<String>,
    /// Write reports here instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

fn slots<const N: usize>(s: &str) -> Result<[i64; N], String> {
    let v = e8forms::qform::parse_ints(s).map_err(|e| e.to_string())?;
    v.try_into().map_err(|v: Vec<i64>| format!("expected {N} entries, got {}", v.len()))
}

#[derive(Args)]
struct TitsArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = slots::<3>)]
    gamma3: [i64; 3],
    #[arg(long, allow_hyphen_values = true, value_parser = slots::<3>)]
    phi3: [i64; 3],
    #[arg(long, allow_hyphen_values = true, value_parser = slots::<5>)]
    phi5: [i64; 5],
    #[arg(long, default_value = "Q")]
    field: BaseField,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DescentArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    c: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CruxArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RootsArgs {
    /// Table name such as D8_in_E8, or `all`.
    #[arg(long, default_value = "all")]
    embedding: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AppendixArgs {
    #[arg(long)]
    s: u32,
    /// Number of factors; both readings are run when omitted.
    #[arg(long)]
    r: Option<usize>,
    /// Truncation order, default 2^(s+1).
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Tits(a) => tits(a),
        Command::Descent(a) => descent(a),
        Command::Crux(a) => crux(a),
        Command::Roots(a) => roots(a),
        Command::Appendix(a) => appendix(a),
        Command::VerifyPaper(a) => verify(a),
    };
    ExitCode::from(code)
}

fn emit<T: Serialize>(value: &T, json: bool, text: impl FnOnce() -> String) -> String {
    if json {
        serde_json::to_string(value).expect("serializable report")
    } else {
        text()
    }
}

fn kill_code(e: &KillError) -> u8 {
    match e {
        KillError::Inconsistent(_) => LOGIC_ERROR,
        _ => DATA_ERROR,
    }
}

fn killing_text(r: &KillingReport) -> String {
    format!(
        "signature      {}\nreal_class     {}\nkappa_i_level  {}\nrost_zero      {}\nindex_hint     {}\nredkill        {}\nkappa          {}",
        r.signature,
        json_word(&r.real_class),
        r.kappa_i_level,
        r.rost_zero,
        json_word(&r.index_hint),
        r.redkill,
        r.kappa
    )
}

fn tits_text(r: &TitsReport) -> String {
    format!(
        "signature      {}\nkappa_i_level  {}\nrost15_zero    {}\nredkill        {}\nkappa          {}",
        r.signature, r.kappa_i_level, r.rost15_zero, r.redkill, r.kappa
    )
}

fn json_word<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|x| x.as_str().map(str::to_string)).unwrap_or_default()
}

fn record_report(rec: &Record, json: bool) -> Result<String, KillError> {
    Ok(match rec {
        Record::E8(i) => {
            let r = killing_report(i)?;
            emit(&r, json, || killing_text(&r))
        }
        Record::Tits(t) => {
            let r = tits_construction(t)?;
            emit(&r, json, || tits_text(&r))
        }
    })
}

fn write_out(path: Option<&str>, body: &str) -> u8 {
    match path {
        Some(p) => match fs::write(p, body) {
            Ok(()) => OK,
            Err(e) => {
                eprintln!("cannot write {p}: {e}");
                DATA_ERROR
            }
        },
        None => {
            let mut out = io::stdout().lock();
            let _ = out.write_all(body.as_bytes());
            OK
        }
    }
}

fn construct(a: ConstructArgs) -> u8 {
    if let Some(path) = &a.batch {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("cannot read {path}: {e}");
                return DATA_ERROR;
            }
        };
        let mut code = OK;
        let mut body = String::new();
        for item in parse_batch(&text) {
            match item {
                Ok((line, rec)) => match record_report(&rec, a.json) {
                    Ok(s) => {
                        body.push_str(&s);
                        body.push('\n');
                        if !a.json {
                            body.push('\n');
                        }
                    }
                    Err(e) => {
                        eprintln!("line {line}: {e}");
                        code = code.max(kill_code(&e));
                    }
                },
                Err(e) => {
                    eprintln!("{e}");
                    code = code.max(DATA_ERROR);
                }
            }
        }
        return code.max(write_out(a.out.as_deref(), &body));
    }
    let input = match E8Input::new(a.field, [a.q1, a.q2, a.q3, a.q4], a.c) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("{e}");
            return DATA_ERROR;
        }
    };
    match record_report(&Record::E8(input), a.json) {
        Ok(s) => write_out(a.out.as_deref(), &(s + "\n")),
        Err(e) => {
            eprintln!("{e}");
            kill_code(&e)
        }
    }
}

fn tits(a: TitsArgs) -> u8 {
    let result = TitsInput::new(a.field, a.gamma3, a.phi3, a.phi5).and_then(|t| record_report(&Record::Tits(t), a.json));
    match result {
        Ok(s) => {
            println!("{s}");
            OK
        }
        Err(e) => {
            eprintln!("{e}");
            kill_code(&e)
        }
    }
}

#[derive(Serialize)]
struct DescentOut {
    form: QForm,
    expected: QForm,
    witt_equal: bool,
}

fn descent(a: DescentArgs) -> u8 {
    if a.c == 0 {
        eprintln!("zero parameter");
        return DATA_ERROR;
    }
    let eta = Matrix::from_rows(vec![vec![int(0), int(a.c)], vec![rat(1, a.c), int(0)]]);
    let form = match QuadExtMatrix::from_rational(a.a, &eta).and_then(|e| descent_form(&e, &antidiagonal(2))) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return DATA_ERROR;
        }
    };
    let expected = &QForm::q(&[2 * a.c]) * &QForm::q(&[1, -a.a]);
    let witt_equal = form.witt_equal(&expected).unwrap_or(false);
    let out = DescentOut { form, expected, witt_equal };
    println!(
        "{}",
        emit(&out, a.json, || format!("form        {}\nexpected    {}\nwitt_equal  {}", out.form, out.expected, out.witt_equal))
    );
    if witt_equal {
        OK
    } else {
        LOGIC_ERROR
    }
}

fn crux(a: CruxArgs) -> u8 {
    match crux_form(a.a, a.b) {
        Ok(r) => {
            println!(
                "{}",
                emit(&r, a.json, || format!(
                    "form              {}\nwitt_index        {}\nhyperbolic        {}\nmatches_product   {}",
                    r.form, r.witt_index, r.hyperbolic, r.matches_factorization
                ))
            );
            if r.witt_index == 4 {
                OK
            } else {
                LOGIC_ERROR
            }
        }
        Err(e) => {
            eprintln!("{e}");
            DATA_ERROR
        }
    }
}

#[derive(Serialize)]
struct RootsOut {
    name: String,
    consistent: bool,
    pairs: usize,
    mismatches: usize,
    rost_multipliers: Vec<(String, String)>,
}

#[derive(Serialize)]
struct CentralizerOut {
    roots: usize,
    type_name: String,
    simple: Vec<Vec<i64>>,
    highest: Vec<i64>,
    stored_rows_simple: bool,
}

fn roots(a: RootsArgs) -> u8 {
    let tables: Vec<Embedding> = if a.embedding == "all" {
        Embedding::TABLES.to_vec()
    } else {
        match a.embedding.parse() {
            Ok(e) => vec![e],
            Err(e) => {
                eprintln!("{e}");
                return DATA_ERROR;
            }
        }
    };
    let mut code = OK;
    for e in tables {
        let map = embedding_table(e);
        let rep = verify_embedding(&map);
        let rost_multipliers = SystemLabel::ALL
            .iter()
            .filter_map(|&l| map.rost_multiplier(l).ok().map(|m| (l.to_string(), m.to_string())))
            .collect();
        let out = RootsOut {
            name: rep.name.clone(),
            consistent: rep.is_consistent(),
            pairs: rep.pairs.len(),
            mismatches: rep.mismatches,
            rost_multipliers,
        };
        if !out.consistent {
            code = LOGIC_ERROR;
        }
        println!(
            "{}",
            emit(&out, a.json, || {
                let mults: Vec<String> = out.rost_multipliers.iter().map(|(l, m)| format!("{l}:{m}")).collect();
                format!("{:14} pairs {:3}  mismatches {}  rost {}", out.name, out.pairs, out.mismatches, mults.join(" "))
            })
        );
    }
    if a.embedding == "all" {
        let c = c4_centralizer();
        let out = CentralizerOut {
            roots: c.subsystem.roots.len(),
            type_name: c.subsystem.type_name(),
            simple: c.subsystem.simple.clone(),
            highest: c.highest.clone(),
            stored_rows_simple: c.rows_simple.iter().all(|&b| b),
        };
        println!(
            "{}",
            emit(&out, a.json, || format!(
                "C4 centralizer {} roots, type {}, highest root {:?}, stored rows simple {}",
                out.roots, out.type_name, out.highest, out.stored_rows_simple
            ))
        );
    }
    code
}

fn appendix(a: AppendixArgs) -> u8 {
    let order = a.order.unwrap_or_else(|| default_order(a.s));
    let counts: Vec<(String, usize)> = match a.r {
        Some(r) => vec![("given".into(), r)],
        None => FactorCount::ALL.iter().map(|fc| (fc.to_string(), fc.factors(a.s))).collect(),
    };
    let mut code = OK;
    for (label, r) in counts {
        let rep: SearchReport = match search_equality(a.s, r, order) {
            Ok(rep) => rep,
            Err(e) => {
                eprintln!("{e}");
                return DATA_ERROR;
            }
        };
        if !rep.all_j1_at_least_s {
            code = LOGIC_ERROR;
        }
        println!(
            "{}",
            emit(&rep, a.json, || format!(
                "{label}: s={} r={} order={} solutions {:?} j1>=s {}",
                rep.s, rep.r, rep.order, rep.solutions, rep.all_j1_at_least_s
            ))
        );
    }
    code
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    checks: &'a [e8forms::verify::CheckResult],
    summary: e8forms::verify::Summary,
}

fn verify(a: VerifyArgs) -> u8 {
    let suites = match parse_suites(&a.suite) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return DATA_ERROR;
        }
    };
    let results = run(&suites);
    let summary = summarize(&results);
    if a.json {
        println!("{}", serde_json::to_string_pretty(&VerifyOut { checks: &results, summary }).expect("serializable"));
    } else {
        for r in &results {
            println!("{:10} {:36} {:13} {}", r.suite, r.id, r.status, r.details);
        }
        println!(
            "\n{} pass, {} fail, {} not witnessed, {} skipped",
            summary.pass, summary.fail, summary.not_witnessed, summary.skipped
        );
    }
    if results.iter().any(|r| r.status == Status::Fail) {
        LOGIC_ERROR
    } else {
        OK
    }
}
