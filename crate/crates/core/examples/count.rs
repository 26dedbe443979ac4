use std::time::Instant;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(8);
    let t = Instant::now();
    let c = longpath_core::count_connected(n).unwrap();
    println!("n={n} connected={c} in {:.2?}", t.elapsed());
}
