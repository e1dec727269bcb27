int injection_ok_sanitized_copy_main(int c) {
  char *x = input();
  char *y = sanitize(x);
  exec(y);
  return 0;
}
