use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use refinery_core::ngon::{SCAN_N_MAX, SCAN_N_MIN};

#[derive(Debug, Parser)]
#[command(
    name = "refinery",
    version,
    about = "Exact checks of simplicial refinements of polygons"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the hexagon refinement and verify features a-e.
    VerifyHexagon(VerifyArgs),
    /// Run the window construction over regular n-gons.
    Scan(ScanArgs),
    /// Summarize a V-polytope file.
    Inspect(InspectArgs),
    /// Draw the hexagon with the two level lines of a form.
    Svg(SvgArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    /// Verify a deliberately broken instance instead (test hook).
    #[arg(long, hide = true)]
    pub corrupt_fixture: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    /// Polygon sizes, `A..B` or `A`.
    #[arg(long = "n", value_parser = parse_n_range, default_value = "4..8")]
    pub n: RangeInclusive<usize>,
    /// Window lengths, `A..B` or `A`; defaults to every `2..n-1`.
    #[arg(long = "k", value_parser = parse_k_range)]
    pub k: Option<RangeInclusive<usize>>,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    /// V-polytope file: one vertex per line, `#` comments.
    #[arg(long)]
    pub fixture: PathBuf,
}

#[derive(Debug, Args)]
pub struct SvgArgs {
    /// Output path; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Form whose level lines are drawn: v1..v6, u, or 0.
    #[arg(long, default_value = "v1")]
    pub form: String,
    /// Width and height of the picture in pixels.
    #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u32).range(100..=4000))]
    pub size: u32,
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("not a number: {s:?}"))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

pub fn parse_n_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let r = parse_range(text)?;
    if *r.start() < SCAN_N_MIN || *r.end() > SCAN_N_MAX {
        return Err(format!("n must lie in {SCAN_N_MIN}..{SCAN_N_MAX}"));
    }
    Ok(r)
}

pub fn parse_k_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let r = parse_range(text)?;
    if *r.start() < 2 || *r.end() > SCAN_N_MAX - 1 {
        return Err(format!("k must lie in 2..{}", SCAN_N_MAX - 1));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("4..8").unwrap(), 4..=8);
        assert_eq!(parse_n_range("6").unwrap(), 6..=6);
        assert_eq!(parse_n_range("3..=5").unwrap(), 3..=5);
        assert!(parse_n_range("2..5").is_err());
        assert!(parse_n_range("5..17").is_err());
        assert!(parse_n_range("8..4").is_err());
        assert!(parse_n_range("x").is_err());
        assert!(parse_k_range("1..3").is_err());
    }
}
