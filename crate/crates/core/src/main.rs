use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cryptsteg::chaos::KeystreamGenerator;
use cryptsteg::{
    capacity, distortion, embed, extract, load_image, save_image, BitSequence, CryptoKey, Error,
    RandomnessReport, StegoKey, StegoParams,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FORMAT: u8 = 3;
const EXIT_EXTRACT: u8 = 4;

const MIN_TEST_BITS: usize = 10_000;
const Z_LIMIT: f64 = 4.0;

#[derive(Parser)]
#[command(
    name = "cryptsteg",
    version,
    about = "Hide encrypted messages in lossless images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encrypt a message and hide it in a cover image
    Embed(EmbedArgs),
    /// Recover and decrypt a message from a stego image
    Extract(ExtractArgs),
    /// Compare a cover and a stego image
    Analyze(AnalyzeArgs),
    /// Run the randomness battery on a keystream
    KeystreamTest(KeystreamArgs),
}

#[derive(Args)]
struct Keys {
    /// Crypto-key, a decimal 0.d1..d17 in (0,1)
    #[arg(
        long,
        env = "CRYPTSTEG_CRYPTO_KEY",
        hide_env_values = true,
        value_name = "DECIMAL"
    )]
    crypto_key: String,
    /// Stego-key, 1 to 16 hex digits
    #[arg(
        long,
        env = "CRYPTSTEG_STEGO_KEY",
        hide_env_values = true,
        value_name = "HEX"
    )]
    stego_key: String,
    /// Low bits used per sample (1-4); must match between embed and extract
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
    k: u8,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    cover: PathBuf,
    /// Inline UTF-8 message; stdin is read when neither message flag is given
    #[arg(long, conflicts_with = "message_file")]
    message: Option<String>,
    #[arg(long)]
    message_file: Option<PathBuf>,
    #[command(flatten)]
    keys: Keys,
    /// Output path; always written as PNG
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    stego: PathBuf,
    #[command(flatten)]
    keys: Keys,
    /// Write the recovered bytes here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    cover: PathBuf,
    #[arg(long)]
    stego: PathBuf,
    /// Emit JSON instead of key=value lines
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct KeystreamArgs {
    #[arg(
        long,
        env = "CRYPTSTEG_CRYPTO_KEY",
        hide_env_values = true,
        value_name = "DECIMAL"
    )]
    crypto_key: String,
    /// Number of keystream bits to test (at least 10000)
    #[arg(long, default_value_t = 1_000_000)]
    bits: usize,
    #[arg(long)]
    json: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidKey(_) | Error::InvalidParameter(_) => EXIT_USAGE,
            Error::CapacityExceeded { .. }
            | Error::UnsupportedFormat(_)
            | Error::UnsupportedDepth(_)
            | Error::Decode { .. }
            | Error::ShapeMismatch { .. } => EXIT_FORMAT,
            Error::MalformedHeader => EXIT_EXTRACT,
            _ => EXIT_FAILURE,
        };
        let message = match e {
            Error::CapacityExceeded {
                required,
                available,
            } => {
                format!("message too large: {required} bytes required, {available} bytes available")
            }
            other => other.to_string(),
        };
        Failure { code, message }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl Keys {
    fn parse(&self) -> Result<(CryptoKey, StegoKey, StegoParams), Failure> {
        Ok((
            self.crypto_key.parse()?,
            self.stego_key.parse()?,
            StegoParams::new(self.k)?,
        ))
    }
}

fn cmd_embed(args: EmbedArgs) -> Result<(), Failure> {
    let (crypto_key, stego_key, params) = args.keys.parse()?;
    let message = match (&args.message, &args.message_file) {
        (Some(text), _) => text.as_bytes().to_vec(),
        (None, Some(path)) => fs::read(path)?,
        (None, None) => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            buf
        }
    };
    let cover = load_image(&args.cover)?;
    let available = capacity(&cover, params);
    let ciphertext = cryptsteg::encrypt(&message, &crypto_key)?;
    let stego = embed(&cover, &ciphertext, &stego_key, params)?;
    save_image(&stego, &args.out)?;
    let report = distortion(&cover, &stego)?;
    println!("capacity_used={}/{}", ciphertext.len(), available);
    if report.psnr_db.is_infinite() {
        println!("psnr_db=inf");
    } else {
        println!("psnr_db={:.4}", report.psnr_db);
    }
    println!("changed_bytes={}", report.changed_bytes);
    Ok(())
}

fn cmd_extract(args: ExtractArgs) -> Result<(), Failure> {
    let (crypto_key, stego_key, params) = args.keys.parse()?;
    let stego = load_image(&args.stego)?;
    let ciphertext = extract(&stego, &stego_key, params)?;
    let plaintext = cryptsteg::decrypt(&ciphertext, &crypto_key)?;
    match args.out {
        Some(path) => fs::write(path, &plaintext)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(&plaintext)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let cover = load_image(&args.cover)?;
    let stego = load_image(&args.stego)?;
    let report = distortion(&cover, &stego)?;
    if args.json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    Ok(())
}

fn cmd_keystream_test(args: KeystreamArgs) -> Result<(), Failure> {
    if args.bits < MIN_TEST_BITS {
        return Err(usage(format!("--bits must be at least {MIN_TEST_BITS}")));
    }
    let key: CryptoKey = args.crypto_key.parse()?;
    let mut gen = KeystreamGenerator::new(&key)?;
    let bits = (0..args.bits)
        .map(|_| gen.next_bit())
        .collect::<Result<Vec<bool>, _>>()?;
    let report = RandomnessReport::from_bits(&BitSequence::from(bits))?;
    let pass = report.passes(Z_LIMIT);
    if args.json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
        println!("result={}", if pass { "PASS" } else { "FAIL" });
    }
    if pass {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_FAILURE,
            message: format!("keystream failed the randomness battery (|z| > {Z_LIMIT})"),
        })
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Embed(a) => cmd_embed(a),
        Command::Extract(a) => cmd_extract(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::KeystreamTest(a) => cmd_keystream_test(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cryptsteg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
