//! Command-line front end over file-based keys and ciphertexts.
//!
//! A key directory holds `master.key`, `params.pub`, `client-<j>.key` and
//! `cmpkey-<j>-<k>.key`. Secret files are created with mode 0600.
//!
//! Exit codes: 0 success or GEQ, 10 LESS, 20 usage, 21 invalid value,
//! 22 file exists, 23 client index, 30 decode, 31 scheme mismatch,
//! 32 orientation mismatch, 33 integrity failure, 34 I/O.

use std::ffi::OsString;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::basic::{self, BasicCiphertext, BasicComparisonKey, ClientSecretKey, MasterKey, PublicParams};
use crate::encoding::{CmpOutcome, Plaintext};
use crate::enhanced::{self, EnhancedCiphertext, EnhancedSecretKey};
use crate::eore::{self, EoreCiphertext, EoreComparisonKey, EoreMasterKey, EorePublicParams};
use crate::error::{DecodeError, Error};
use crate::pairing::PairingStats;
use crate::range::{self, bench, EncryptedColumn, Method};
use crate::wire::{peek_tag, tag, WireFormat};

pub const SEED_ENV: &str = "MCORE_TEST_SEED";

pub mod exit {
    pub const OK: i32 = 0;
    pub const LESS: i32 = 10;
    pub const USAGE: i32 = 20;
    pub const INVALID_VALUE: i32 = 21;
    pub const FILE_EXISTS: i32 = 22;
    pub const CLIENT_INDEX: i32 = 23;
    pub const DECODE: i32 = 30;
    pub const SCHEME_MISMATCH: i32 = 31;
    pub const ORIENTATION: i32 = 32;
    pub const INTEGRITY: i32 = 33;
    pub const IO: i32 = 34;
}

#[derive(Parser, Debug)]
#[command(name = "mcore", version, about = "Multi-client order-revealing encryption")]
struct Cli {
    /// Allow a pinned RNG seed from the MCORE_TEST_SEED variable. Never for real keys.
    #[arg(long, global = true)]
    insecure_test: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Basic,
    Eore,
    Enhanced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Simple,
    Binsearch,
    Hybrid,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Simple => vec![Method::Simple],
            MethodArg::Binsearch => vec![Method::BinSearch],
            MethodArg::Hybrid => vec![Method::Hybrid],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Create a master key and public parameters.
    Setup {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long)]
        clients: u32,
        #[arg(long, default_value_t = 32)]
        bits: u8,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Derive the secret key of one client.
    Genkey {
        #[arg(long)]
        client: u32,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        /// Needed only to pick the enhanced scheme over plain EORE.
        #[arg(long, value_enum)]
        scheme: Option<SchemeArg>,
        #[arg(long)]
        force: bool,
    },
    /// Encrypt a value under a client key.
    Encrypt {
        #[arg(long)]
        client: u32,
        #[arg(long)]
        value: u64,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        #[arg(long, required_unless_present = "append")]
        out: Option<PathBuf>,
        /// Append to a column file instead (basic scheme), creating it if missing.
        #[arg(long, requires = "row_id")]
        append: Option<PathBuf>,
        #[arg(long)]
        row_id: Option<u64>,
        #[arg(long)]
        force: bool,
    },
    /// Keyless comparison of two ciphertexts of one client.
    Compare {
        ct1: PathBuf,
        ct2: PathBuf,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
    /// Issue a comparison key for a client pair.
    Cmpkey {
        #[arg(long, value_parser = parse_pair)]
        pair: (u32, u32),
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Keyed comparison of ciphertexts of two clients.
    Comparemc {
        ct1: PathBuf,
        ct2: PathBuf,
        #[arg(long)]
        cmpkey: PathBuf,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        /// Locate the differing bit by binary search (basic scheme).
        #[arg(long)]
        binsearch: bool,
    },
    /// Rows of a column holding values less than the query.
    Query {
        #[arg(long)]
        column: PathBuf,
        #[arg(long, value_enum, default_value = "simple")]
        method: MethodArg,
        #[arg(long)]
        query: PathBuf,
        #[arg(long)]
        cmpkey: PathBuf,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
    /// Compare the query methods on random columns; writes CSV.
    Bench {
        /// Value range R, decimal or 2^k.
        #[arg(long, default_value = "2^32")]
        range: String,
        #[arg(long, default_value_t = 100)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        iters: usize,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        #[arg(long, default_value_t = 32)]
        bits: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (j, k) = s.split_once(',').ok_or("expected j,k")?;
    let p = |x: &str| x.trim().parse::<u32>().map_err(|e| e.to_string());
    Ok((p(j)?, p(k)?))
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidParameter(_) | Error::BitLengthMismatch { .. } => exit::INVALID_VALUE,
            Error::ClientOutOfRange { .. } | Error::SameClient(_) | Error::ClientMismatch { .. } => exit::CLIENT_INDEX,
            Error::OrientationMismatch { .. } => exit::ORIENTATION,
            Error::Integrity { .. } => exit::INTEGRITY,
            Error::Decode(DecodeError::UnexpectedTag { .. }) => exit::SCHEME_MISMATCH,
            Error::Decode(_) => exit::DECODE,
            Error::Io(_) => exit::IO,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<DecodeError> for Failure {
    fn from(e: DecodeError) -> Self {
        Error::from(e).into()
    }
}

type CliResult<T> = Result<T, Failure>;

struct Files;

impl Files {
    fn master(dir: &Path) -> PathBuf {
        dir.join("master.key")
    }

    fn params(dir: &Path) -> PathBuf {
        dir.join("params.pub")
    }

    fn client(dir: &Path, j: u32) -> PathBuf {
        dir.join(format!("client-{j}.key"))
    }

    fn cmpkey(dir: &Path, j: u32, k: u32) -> PathBuf {
        dir.join(format!("cmpkey-{j}-{k}.key"))
    }
}

fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| Failure::new(exit::IO, format!("{}: {e}", path.display())))
}

fn load<T: WireFormat>(path: &Path) -> CliResult<T> {
    T::from_bytes(&read_file(path)?).map_err(|e| {
        let f = Failure::from(e);
        Failure::new(f.code, format!("{}: {}", path.display(), f.message))
    })
}

fn write_file(path: &Path, bytes: &[u8], secret: bool, force: bool) -> CliResult<()> {
    let mut opts = OpenOptions::new();
    opts.write(true);
    if force {
        opts.create(true).truncate(true);
    } else {
        opts.create_new(true);
    }
    #[cfg(unix)]
    if secret {
        use std::os::unix::fs::OpenOptionsExt;
        opts.mode(0o600);
    }
    #[cfg(not(unix))]
    let _ = secret;
    let mut f = opts.open(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::AlreadyExists {
            Failure::new(exit::FILE_EXISTS, format!("{} exists; pass --force to overwrite", path.display()))
        } else {
            Failure::new(exit::IO, format!("{}: {e}", path.display()))
        }
    })?;
    f.write_all(bytes).map_err(|e| Failure::new(exit::IO, e.to_string()))
}

enum Params {
    Basic(PublicParams),
    Eore(EorePublicParams),
}

impl Params {
    fn load(dir: &Path) -> CliResult<Self> {
        let path = Files::params(dir);
        let bytes = read_file(&path)?;
        match peek_tag(&bytes)? {
            tag::BASIC_PARAMS => Ok(Params::Basic(PublicParams::from_bytes(&bytes)?)),
            tag::EORE_PARAMS => Ok(Params::Eore(EorePublicParams::from_bytes(&bytes)?)),
            t => Err(Failure::new(exit::SCHEME_MISMATCH, format!("{}: not public parameters (tag 0x{t:02x})", path.display()))),
        }
    }

    fn basic(&self) -> CliResult<&PublicParams> {
        match self {
            Params::Basic(pp) => Ok(pp),
            Params::Eore(_) => Err(Failure::new(exit::SCHEME_MISMATCH, "key directory holds EORE parameters, not basic")),
        }
    }

    fn eore(&self) -> CliResult<&EorePublicParams> {
        match self {
            Params::Eore(pp) => Ok(pp),
            Params::Basic(_) => Err(Failure::new(exit::SCHEME_MISMATCH, "key directory holds basic parameters, not EORE")),
        }
    }

    fn bits(&self) -> u8 {
        match self {
            Params::Basic(pp) => pp.bits(),
            Params::Eore(pp) => pp.bits(),
        }
    }

    fn check_client(&self, j: u32) -> CliResult<()> {
        let max = match self {
            Params::Basic(pp) => pp.clients(),
            Params::Eore(pp) => pp.clients(),
        };
        if j == 0 || j > max {
            return Err(Error::ClientOutOfRange { index: j, max }.into());
        }
        Ok(())
    }
}

fn outcome_line(o: &CmpOutcome) -> String {
    format!("{} msdb={}", if o.less { "LESS" } else { "GEQ" }, o.msdb)
}

fn outcome_code(o: &CmpOutcome) -> i32 {
    if o.less {
        exit::LESS
    } else {
        exit::OK
    }
}

struct Ctx<'a> {
    rng: ChaCha20Rng,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn say(&mut self, line: impl AsRef<str>) -> CliResult<()> {
        writeln!(self.out, "{}", line.as_ref()).map_err(|e| Failure::new(exit::IO, e.to_string()))
    }

    fn note(&mut self, line: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", line.as_ref());
    }
}

/// Runs the CLI with the seed variable taken from the process environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let seed = std::env::var(SEED_ENV).ok();
    run_with_seed(args, seed.as_deref(), out, err)
}

/// As [`run`], with the pinned-seed variable passed explicitly.
pub fn run_with_seed<I, T>(args: I, seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let rng = match (seed, cli.insecure_test) {
        (None, _) => ChaCha20Rng::from_entropy(),
        (Some(s), true) => match s.parse::<u64>() {
            Ok(v) => ChaCha20Rng::seed_from_u64(v),
            Err(_) => {
                let _ = writeln!(err, "error: {SEED_ENV} must be an integer");
                return exit::USAGE;
            }
        },
        (Some(_), false) => {
            let _ = writeln!(err, "error: {SEED_ENV} is set; refusing to run without --insecure-test");
            return exit::USAGE;
        }
    };
    let mut ctx = Ctx { rng, out, err };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            ctx.note(format!("error: {}", f.message));
            f.code
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> CliResult<i32> {
    match cmd {
        Command::Setup { scheme, clients, bits, out_dir, force } => setup(ctx, scheme, clients, bits, &out_dir, force),
        Command::Genkey { client, dir, scheme, force } => genkey(ctx, client, &dir, scheme, force),
        Command::Encrypt { client, value, dir, out, append, row_id, force } => {
            encrypt(ctx, client, value, &dir, out.as_deref(), append.as_deref().zip(row_id), force)
        }
        Command::Compare { ct1, ct2, dir } => compare_cmd(ctx, &ct1, &ct2, &dir),
        Command::Cmpkey { pair, dir, out, force } => cmpkey(ctx, pair, &dir, out, force),
        Command::Comparemc { ct1, ct2, cmpkey, dir, binsearch } => comparemc(ctx, &ct1, &ct2, &cmpkey, &dir, binsearch),
        Command::Query { column, method, query, cmpkey, dir } => run_query_cmd(ctx, &column, method, &query, &cmpkey, &dir),
        Command::Bench { range, size, iters, method, bits, out } => bench(ctx, &range, size, iters, method, bits, out.as_deref()),
    }
}

fn setup(ctx: &mut Ctx<'_>, scheme: SchemeArg, clients: u32, bits: u8, dir: &Path, force: bool) -> CliResult<i32> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::new(exit::IO, e.to_string()))?;
    let (mk, pp) = match scheme {
        SchemeArg::Basic => {
            let (mk, pp) = basic::setup(&mut ctx.rng, clients, bits)?;
            (mk.to_bytes(), pp.to_bytes())
        }
        SchemeArg::Eore | SchemeArg::Enhanced => {
            let (mk, pp) = eore::eore_setup(&mut ctx.rng, clients, bits)?;
            (mk.to_bytes(), pp.to_bytes())
        }
    };
    for path in [Files::master(dir), Files::params(dir)] {
        if path.exists() && !force {
            return Err(Failure::new(exit::FILE_EXISTS, format!("{} exists; pass --force to overwrite", path.display())));
        }
    }
    write_file(&Files::master(dir), &mk, true, force)?;
    write_file(&Files::params(dir), &pp, false, force)?;
    ctx.say(format!("wrote {} and {}", Files::master(dir).display(), Files::params(dir).display()))?;
    Ok(exit::OK)
}

fn genkey(ctx: &mut Ctx<'_>, j: u32, dir: &Path, scheme: Option<SchemeArg>, force: bool) -> CliResult<i32> {
    let params = Params::load(dir)?;
    let bytes = match (&params, scheme) {
        (Params::Basic(pp), None | Some(SchemeArg::Basic)) => {
            let mk: MasterKey = load(&Files::master(dir))?;
            basic::gen_key(j, &mk, pp)?.to_bytes()
        }
        (Params::Eore(pp), None | Some(SchemeArg::Eore)) => {
            let mk: EoreMasterKey = load(&Files::master(dir))?;
            eore::gen_key(j, &mk, pp)?.to_bytes()
        }
        (Params::Eore(pp), Some(SchemeArg::Enhanced)) => {
            let mk: EoreMasterKey = load(&Files::master(dir))?;
            enhanced::enh_gen_key(j, &mk, pp, &mut ctx.rng)?.to_bytes()
        }
        _ => return Err(Failure::new(exit::SCHEME_MISMATCH, "requested scheme does not match the key directory")),
    };
    let path = Files::client(dir, j);
    write_file(&path, &bytes, true, force)?;
    ctx.say(format!("wrote {}", path.display()))?;
    Ok(exit::OK)
}

fn encrypt(
    ctx: &mut Ctx<'_>,
    j: u32,
    value: u64,
    dir: &Path,
    out: Option<&Path>,
    append: Option<(&Path, u64)>,
    force: bool,
) -> CliResult<i32> {
    let params = Params::load(dir)?;
    let m = Plaintext::new(value, params.bits())?;
    params.check_client(j)?;
    let key_bytes = read_file(&Files::client(dir, j))?;
    let ct = match peek_tag(&key_bytes)? {
        tag::CLIENT_KEY => {
            let sk = ClientSecretKey::from_bytes(&key_bytes)?;
            match &params {
                Params::Basic(pp) => basic::encrypt(&m, &sk, pp)?.to_bytes(),
                Params::Eore(pp) => eore::eore_encrypt(&m, &sk, pp, &mut ctx.rng)?.to_bytes(),
            }
        }
        tag::ENHANCED_CLIENT_KEY => {
            let sk = EnhancedSecretKey::from_bytes(&key_bytes)?;
            enhanced::enh_encrypt(&m, &sk, params.eore()?, &mut ctx.rng)?.to_bytes()
        }
        t => return Err(Failure::new(exit::SCHEME_MISMATCH, format!("client key file has tag 0x{t:02x}"))),
    };
    if let Some((column, row_id)) = append {
        let basic_ct = BasicCiphertext::from_bytes(&ct)
            .map_err(|_| Failure::new(exit::SCHEME_MISMATCH, "columns hold basic-scheme ciphertexts only"))?;
        if !column.exists() {
            EncryptedColumn::create_file(column, j, params.bits())?;
        }
        EncryptedColumn::append_to_file(column, row_id, &basic_ct)?;
        ctx.say(format!("appended row {row_id} to {}", column.display()))?;
    }
    if let Some(out) = out {
        write_file(out, &ct, false, force)?;
        ctx.say(format!("wrote {}", out.display()))?;
    }
    Ok(exit::OK)
}

fn compare_cmd(ctx: &mut Ctx<'_>, ct1: &Path, ct2: &Path, dir: &Path) -> CliResult<i32> {
    let (a, b) = (read_file(ct1)?, read_file(ct2)?);
    let (ta, tb) = (peek_tag(&a)?, peek_tag(&b)?);
    if ta != tb {
        return Err(Failure::new(exit::SCHEME_MISMATCH, format!("ciphertext tags differ: 0x{ta:02x} vs 0x{tb:02x}")));
    }
    let outcome = match ta {
        tag::BASIC_CIPHERTEXT => {
            let params = Params::load(dir)?;
            basic::compare(&BasicCiphertext::from_bytes(&a)?, &BasicCiphertext::from_bytes(&b)?, params.basic()?)?
        }
        tag::ENHANCED_CIPHERTEXT => {
            enhanced::enh_compare(&EnhancedCiphertext::from_bytes(&a)?, &EnhancedCiphertext::from_bytes(&b)?)?
        }
        tag::EORE_CIPHERTEXT => {
            return Err(Failure::new(
                exit::SCHEME_MISMATCH,
                "EORE ciphertexts have no keyless comparison; use comparemc with a comparison key",
            ))
        }
        t => return Err(Failure::new(exit::SCHEME_MISMATCH, format!("not a ciphertext (tag 0x{t:02x})"))),
    };
    ctx.say(outcome_line(&outcome))?;
    Ok(outcome_code(&outcome))
}

fn cmpkey(ctx: &mut Ctx<'_>, (j, k): (u32, u32), dir: &Path, out: Option<PathBuf>, force: bool) -> CliResult<i32> {
    let bytes = match Params::load(dir)? {
        Params::Basic(pp) => {
            let mk: MasterKey = load(&Files::master(dir))?;
            basic::gen_cmp_key(j, k, &mk, &pp, &mut ctx.rng)?.to_bytes()
        }
        Params::Eore(pp) => {
            let mk: EoreMasterKey = load(&Files::master(dir))?;
            eore::eore_gen_cmp_key(j, k, &mk, &pp, &mut ctx.rng)?.to_bytes()
        }
    };
    let path = out.unwrap_or_else(|| Files::cmpkey(dir, j, k));
    write_file(&path, &bytes, true, force)?;
    ctx.say(format!("wrote {}", path.display()))?;
    Ok(exit::OK)
}

fn comparemc(ctx: &mut Ctx<'_>, ct1: &Path, ct2: &Path, ck: &Path, dir: &Path, binsearch: bool) -> CliResult<i32> {
    let (a, b, key) = (read_file(ct1)?, read_file(ct2)?, read_file(ck)?);
    let (ta, tb) = (peek_tag(&a)?, peek_tag(&b)?);
    if ta != tb {
        return Err(Failure::new(exit::SCHEME_MISMATCH, format!("ciphertext tags differ: 0x{ta:02x} vs 0x{tb:02x}")));
    }
    let params = Params::load(dir)?;
    let mut stats = PairingStats::new();
    let outcome = match ta {
        tag::BASIC_CIPHERTEXT => {
            let (a, b) = (BasicCiphertext::from_bytes(&a)?, BasicCiphertext::from_bytes(&b)?);
            let ck = BasicComparisonKey::from_bytes(&key)?;
            if binsearch {
                range::compare_mc_binsearch(&a, &b, &ck, params.basic()?, &mut stats)?
            } else {
                basic::compare_mc(&a, &b, &ck, params.basic()?, &mut stats)?
            }
        }
        tag::EORE_CIPHERTEXT | tag::ENHANCED_CIPHERTEXT if binsearch => {
            return Err(Failure::new(exit::SCHEME_MISMATCH, "--binsearch applies to the basic scheme only"))
        }
        tag::EORE_CIPHERTEXT => {
            let (a, b) = (EoreCiphertext::from_bytes(&a)?, EoreCiphertext::from_bytes(&b)?);
            eore::eore_compare_mc(&a, &b, &EoreComparisonKey::from_bytes(&key)?, params.eore()?, &mut stats)?
        }
        tag::ENHANCED_CIPHERTEXT => {
            let (a, b) = (EnhancedCiphertext::from_bytes(&a)?, EnhancedCiphertext::from_bytes(&b)?);
            enhanced::enh_compare_mc(&a, &b, &EoreComparisonKey::from_bytes(&key)?, params.eore()?, &mut stats)?
        }
        t => return Err(Failure::new(exit::SCHEME_MISMATCH, format!("not a ciphertext (tag 0x{t:02x})"))),
    };
    ctx.say(outcome_line(&outcome))?;
    ctx.note(format!("pairings={}", stats.pairings));
    Ok(outcome_code(&outcome))
}

fn run_query_cmd(ctx: &mut Ctx<'_>, column: &Path, method: MethodArg, q: &Path, ck: &Path, dir: &Path) -> CliResult<i32> {
    let params = Params::load(dir)?;
    let pp = params.basic()?;
    let col = EncryptedColumn::load(column)?;
    let qct: BasicCiphertext = load(q)?;
    let ck: BasicComparisonKey = load(ck)?;
    for m in method.methods() {
        let r = range::run_query(m, &col, &qct, &ck, pp, &mut ctx.rng)?;
        let ids: Vec<_> = r.row_ids.iter().map(u64::to_string).collect();
        ctx.say(format!("method={} rows={}", m.name(), ids.join(",")))?;
        ctx.say(format!(
            "method={} compare_mc_calls={} compare_calls={} pairings={}",
            m.name(),
            r.stats.compare_mc_calls,
            r.stats.compare_calls,
            r.stats.pairings
        ))?;
    }
    Ok(exit::OK)
}

fn bench(ctx: &mut Ctx<'_>, range: &str, size: usize, iters: usize, method: MethodArg, bits: u8, out: Option<&Path>) -> CliResult<i32> {
    let cfg = bench::BenchConfig { range: bench::parse_range(range)?, size, trials: iters, methods: method.methods(), bits };
    let rows = bench::run_bench(&cfg, &mut ctx.rng)?;
    let csv = bench::to_csv(&rows);
    match out {
        Some(path) => {
            write_file(path, csv.as_bytes(), false, true)?;
            ctx.say(format!("wrote {}", path.display()))?;
        }
        None => ctx.out.write_all(csv.as_bytes()).map_err(|e| Failure::new(exit::IO, e.to_string()))?,
    }
    Ok(exit::OK)
}
