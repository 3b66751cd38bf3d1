fn main() {
    // System OpenBLAS carries the LAPACK symbols used in src/lapack.rs.
    println!("cargo:rustc-link-lib=dylib=openblas");
}
