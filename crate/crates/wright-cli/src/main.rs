fn main() {
    println!("wright");
}
