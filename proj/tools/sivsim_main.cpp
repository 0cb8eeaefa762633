// Placeholder entry point; the scenario-driven CLI is assembled once the
// physics modules are in place.
int main() { return 0; }
