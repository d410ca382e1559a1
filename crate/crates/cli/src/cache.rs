//! On-disk graph cache, one file per `n`: `t<n>.v1.trigraph`.

use std::env;
use std::fs;
use std::path::PathBuf;

use trimod_core::trigraph::{build_graph, load_graph, save_graph, TrinomialGraph};

use crate::{CacheArgs, Failure};

pub struct GraphCache {
    dir: Option<PathBuf>,
    refresh: bool,
}

fn default_dir() -> Option<PathBuf> {
    let var = |k| env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    var("TRIMOD_CACHE_DIR")
        .or_else(|| var("XDG_CACHE_HOME").map(|d| d.join("trimod")))
        .or_else(|| var("HOME").map(|d| d.join(".cache").join("trimod")))
}

impl GraphCache {
    pub fn new(args: &CacheArgs) -> Self {
        GraphCache {
            dir: args.cache_dir.clone().or_else(default_dir),
            refresh: args.no_cache,
        }
    }

    fn path(&self, n: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("t{n}.v1.trigraph")))
    }

    /// Loads `T(n)` from the cache or builds and stores it. A corrupt cache
    /// file is reported and replaced; a failed store only warns.
    pub fn graph(&self, n: usize) -> Result<TrinomialGraph, Failure> {
        let path = self.path(n);
        if let (Some(p), false) = (&path, self.refresh) {
            if p.exists() {
                match load_graph(p) {
                    Ok(g) if g.n() == n => return Ok(g),
                    Ok(_) => eprintln!("warning: {} holds a different n, rebuilding", p.display()),
                    Err(e) => eprintln!("warning: ignoring cache file {}: {e}", p.display()),
                }
            }
        }
        let g = build_graph(n).map_err(Failure::usage)?;
        if let Some(p) = path {
            let stored = p
                .parent()
                .map_or(Ok(()), fs::create_dir_all)
                .map_err(|e| e.to_string())
                .and_then(|()| save_graph(&g, &p).map_err(|e| e.to_string()));
            if let Err(e) = stored {
                eprintln!("warning: could not cache T({n}) at {}: {e}", p.display());
            }
        }
        Ok(g)
    }
}
