int injection_bug_partly_sanitized_main(int c) {
  char *x = input();
  if (c) {
    x = sanitize(x);
  }
  exec(x);
  return 0;
}
