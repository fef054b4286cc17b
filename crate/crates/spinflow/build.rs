use std::path::Path;

/// Locate an OpenBLAS that bundles LAPACK and CBLAS. The BLAS-backed
/// `ndarray` feature and the LAPACK bindings in `src/lapack.rs` both
/// resolve against this single library.
fn main() {
    let candidates = [
        "/usr/lib/x86_64-linux-gnu/openblas-pthread",
        "/usr/lib/x86_64-linux-gnu/openblas-serial",
        "/usr/lib/x86_64-linux-gnu",
        "/usr/lib64",
        "/usr/local/lib",
        "/opt/homebrew/opt/openblas/lib",
    ];
    for dir in candidates {
        if Path::new(dir).join("libopenblas.so").exists()
            || Path::new(dir).join("libopenblas.a").exists()
            || Path::new(dir).join("libopenblas.dylib").exists()
        {
            println!("cargo:rustc-link-search=native={dir}");
            break;
        }
    }
    println!("cargo:rustc-link-lib=dylib=openblas");
}
