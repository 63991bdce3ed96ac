use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tropid_core::enumerate::{
    list_classes_2, list_classes_general, shortest_identity_search_with, SearchOptions,
};
use tropid_core::identity::check_identity;
use tropid_core::minmax::{class_size, ClassInterval};
use tropid_core::signature::utn_signature;
use tropid_core::stats;
use tropid_core::word::{Content, Word};

mod svg;

#[derive(Parser)]
#[command(name = "tropid", version, about = "Exact identity computations in upper-triangular tropical matrix monoids")]
struct Cli {
    /// Worker threads (default: available parallelism; env TROPID_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether W = V holds in UT_n
    Check {
        w: String,
        v: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        alphabet: Option<usize>,
    },
    /// Print the UT_n signature of a word
    Signature {
        w: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        alphabet: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Minimal and maximal words of a two-letter ~2 class, with its size
    Minmax {
        w: String,
        #[arg(long)]
        json: bool,
    },
    /// List the ~n equivalence class of a word
    Class {
        w: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        alphabet: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Enumerate all ~n classes of one content
    Enumerate {
        /// Content as comma-separated counts, e.g. 5,5
        #[arg(long)]
        content: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Search all ~n identities among two-letter words of a given length
    Shortest {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Sampling experiments
    Stats {
        #[command(subcommand)]
        experiment: StatsCommand,
    },
    /// Draw staircase paths and degree-1 polygons as SVG
    Plot(PlotArgs),
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Fraction of locally isolated words of one content
    Isolated {
        #[arg(long)]
        content: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write a metadata JSON sidecar here
        #[arg(long)]
        metadata: Option<PathBuf>,
    },
    /// Ratios of UT3 to UT2 swap neighbours over W(l/2, l/2)
    Ratio {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 50)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Isoterm / twin / larger-class counts per content slice of a length
    Composition {
        #[arg(long)]
        length: usize,
    },
    /// Largest ~2 class of one content
    Largest {
        #[arg(long)]
        content: String,
    },
}

#[derive(Args)]
struct PlotArgs {
    w: String,
    /// Optional second word, drawn in red
    v: Option<String>,
    /// Output SVG path
    #[arg(long, short)]
    out: PathBuf,
    /// Shade the grey vertex-chain boxes of the MinMax construction
    #[arg(long)]
    boxes: bool,
}

fn fail(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn parse_word(text: &str, alphabet: Option<usize>) -> Word {
    let parsed = match alphabet {
        Some(m) => Word::parse(text, m),
        None => Word::parse_infer(text),
    };
    match parsed {
        Ok(w) => w,
        Err(e) => fail(&format!("bad word {text:?}: {e}")),
    }
}

fn parse_content(text: &str) -> Content {
    let counts: Result<Vec<i64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
    match counts {
        Ok(c) if !c.is_empty() && c.iter().all(|&k| k >= 0) && c.iter().any(|&k| k > 0) => {
            Content(c)
        }
        _ => fail(&format!("bad content {text:?}; expected e.g. 5,5")),
    }
}

fn main() -> ExitCode {
    // die quietly when the consumer of a pipe goes away (e.g. `tropid ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("TROPID_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(k) = threads {
        if k == 0 {
            fail("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .unwrap_or_else(|e| fail(&format!("thread pool: {e}")));
    }

    match cli.command {
        Command::Check { w, v, n, alphabet } => {
            if n < 2 {
                fail("--n must be at least 2");
            }
            let (w, v) = (parse_word(&w, alphabet), parse_word(&v, alphabet));
            if w.alphabet_size() != v.alphabet_size() {
                fail("words use different alphabets");
            }
            if check_identity(&w, &v, n) {
                println!("identity: {w} = {v} holds in UT_{n}");
                ExitCode::SUCCESS
            } else {
                println!("not an identity: {w} = {v} fails in UT_{n}");
                ExitCode::FAILURE
            }
        }
        Command::Signature { w, n, alphabet, format } => {
            if n < 2 {
                fail("--n must be at least 2");
            }
            let w = parse_word(&w, alphabet);
            let sig = utn_signature(&w, n);
            match format {
                OutputFormat::Json => {
                    std::io::stdout().write_all(&sig.canonical_json()).unwrap();
                    println!();
                }
                _ => {
                    for deg in &sig.degrees {
                        for entry in &deg.entries {
                            let verts: Vec<String> = entry
                                .polytope
                                .vertices()
                                .iter()
                                .map(|v| format!("{v:?}"))
                                .collect();
                            println!("d={} u={}: {}", deg.d, entry.u, verts.join(" "));
                        }
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Minmax { w, json } => {
            let w = parse_word(&w, Some(2));
            let ci = ClassInterval::of(&w)
                .unwrap_or_else(|e| fail(&format!("minmax needs a two-letter word: {e}")));
            let size = class_size(&ci);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": "tropid.minmax/1",
                        "min": ci.min_word.to_string(),
                        "max": ci.max_word.to_string(),
                        "size": size.to_string(),
                    })
                );
            } else {
                println!("min  {}", ci.min_word);
                println!("max  {}", ci.max_word);
                println!("size {size}");
            }
            ExitCode::SUCCESS
        }
        Command::Class { w, n, alphabet, format } => {
            if n < 2 {
                fail("--n must be at least 2");
            }
            let w = parse_word(&w, alphabet);
            let members = tropid_core::enumerate::equivalence_class(&w, n);
            match format {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::json!({
                        "schema": "tropid.class/1",
                        "word": w.to_string(),
                        "n": n,
                        "members": members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    })
                ),
                _ => {
                    for m in members {
                        println!("{m}");
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Enumerate { content, n, format } => {
            if n < 2 {
                fail("--n must be at least 2");
            }
            let c = parse_content(&content);
            if n == 2 && c.alphabet_size() == 2 && c.0[0] > 0 && c.0[1] > 0 {
                let classes = list_classes_2(c.0[0] as usize, c.0[1] as usize);
                match format {
                    OutputFormat::Json => {
                        let items: Vec<_> = classes
                            .iter()
                            .map(|ci| {
                                serde_json::json!({
                                    "min": ci.min_word.to_string(),
                                    "max": ci.max_word.to_string(),
                                    "size": class_size(ci).to_string(),
                                })
                            })
                            .collect();
                        println!(
                            "{}",
                            serde_json::json!({
                                "schema": "tropid.enumerate/1",
                                "content": c.0,
                                "n": n,
                                "classes": items,
                            })
                        );
                    }
                    OutputFormat::Csv => {
                        println!("min,max,size");
                        for ci in &classes {
                            println!("{},{},{}", ci.min_word, ci.max_word, class_size(ci));
                        }
                    }
                    OutputFormat::Text => {
                        for ci in &classes {
                            println!("{} .. {} ({})", ci.min_word, ci.max_word, class_size(ci));
                        }
                    }
                }
            } else {
                let table = list_classes_general(&c, n);
                match format {
                    OutputFormat::Json => {
                        let items: Vec<_> = table
                            .buckets
                            .values()
                            .map(|cls| {
                                cls.iter().map(|w| w.to_string()).collect::<Vec<_>>()
                            })
                            .collect();
                        println!(
                            "{}",
                            serde_json::json!({
                                "schema": "tropid.enumerate/1",
                                "content": c.0,
                                "n": n,
                                "classes": items,
                            })
                        );
                    }
                    OutputFormat::Csv => {
                        println!("members");
                        for cls in table.buckets.values() {
                            let joined: Vec<String> =
                                cls.iter().map(|w| w.to_string()).collect();
                            println!("{}", joined.join(" "));
                        }
                    }
                    OutputFormat::Text => {
                        for cls in table.buckets.values() {
                            let joined: Vec<String> =
                                cls.iter().map(|w| w.to_string()).collect();
                            println!("{}", joined.join(" "));
                        }
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Shortest { length, n, checkpoint, format } => {
            if n < 2 || length == 0 {
                fail("need --length >= 1 and --n >= 2");
            }
            let opts = SearchOptions { checkpoint };
            let records = shortest_identity_search_with(length, n, &opts);
            match format {
                OutputFormat::Json => {
                    let items: Vec<_> = records
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "w": r.w.to_string(),
                                "v": r.v.to_string(),
                                "canonical": r.canonical,
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "schema": "tropid.shortest/1",
                            "length": length,
                            "n": n,
                            "identities": items,
                        })
                    );
                }
                _ => {
                    for r in &records {
                        println!(
                            "{} = {}{}",
                            r.w,
                            r.v,
                            if r.canonical { "  [canonical]" } else { "" }
                        );
                    }
                    eprintln!("{} identities", records.len());
                }
            }
            ExitCode::SUCCESS
        }
        Command::Stats { experiment } => run_stats(experiment),
        Command::Plot(args) => {
            let w = parse_word(&args.w, Some(2));
            let v = args.v.as_deref().map(|t| parse_word(t, Some(2)));
            if let Some(v) = &v {
                if v.content() != w.content() {
                    fail("plot overlays need words of equal content");
                }
            }
            let doc = svg::plot(&w, v.as_ref(), args.boxes)
                .unwrap_or_else(|e| fail(&format!("plot: {e}")));
            std::fs::write(&args.out, doc)
                .unwrap_or_else(|e| fail(&format!("write {}: {e}", args.out.display())));
            ExitCode::SUCCESS
        }
    }
}

fn run_stats(cmd: StatsCommand) -> ExitCode {
    match cmd {
        StatsCommand::Isolated { content, n, samples, seed, metadata } => {
            if samples == 0 {
                fail("--samples must be at least 1");
            }
            if n < 2 {
                fail("--n must be at least 2");
            }
            let c = parse_content(&content);
            let row = stats::isolated_fraction(&c, n, samples, seed);
            print!("{}", stats::rows_to_csv("isolated", &[row], seed));
            if let Some(path) = metadata {
                let config = stats::ExperimentConfig {
                    experiment: "isolated".into(),
                    content: c.0.clone(),
                    n,
                    samples,
                    seed,
                    threads: rayon::current_num_threads(),
                };
                std::fs::write(&path, stats::metadata_json(&config))
                    .unwrap_or_else(|e| fail(&format!("write {}: {e}", path.display())));
            }
            ExitCode::SUCCESS
        }
        StatsCommand::Ratio { length, samples, seed } => {
            if samples == 0 || length < 2 || length % 2 != 0 {
                fail("need even --length >= 2 and --samples >= 1");
            }
            let out = stats::neighbor_ratio_ut3(length, samples, seed);
            println!("experiment,param,ratio,seed");
            for r in &out.ratios {
                println!("ratio,{length},{}/{},{seed}", r.numer(), r.denom());
            }
            eprintln!("{} samples without ~2 neighbours skipped", out.isolated);
            ExitCode::SUCCESS
        }
        StatsCommand::Composition { length } => {
            if length < 2 {
                fail("--length must be at least 2");
            }
            println!("ell_a,isoterms,twins,larger,classes,words");
            for row in stats::class_composition(length) {
                println!(
                    "{},{},{},{},{},{}",
                    row.ell_a, row.isoterms, row.twins, row.larger, row.classes, row.words
                );
            }
            ExitCode::SUCCESS
        }
        StatsCommand::Largest { content } => {
            let c = parse_content(&content);
            if c.alphabet_size() != 2 || c.0[0] == 0 || c.0[1] == 0 {
                fail("largest-class search needs a two-letter content");
            }
            let (ci, size) = stats::largest_class(c.0[0] as usize, c.0[1] as usize);
            println!(
                "{}",
                serde_json::json!({
                    "schema": "tropid.largest/1",
                    "content": c.0,
                    "min": ci.min_word.to_string(),
                    "max": ci.max_word.to_string(),
                    "size": size.to_string(),
                })
            );
            ExitCode::SUCCESS
        }
    }
}
