int injection_ok_sanitized_main(int c) {
  char *x = input();
  x = sanitize(x);
  exec(x);
  return 0;
}
