char *injection_bug_wrapper_return_read(int n) {
  char *b = input();
  return b;
}

int injection_bug_wrapper_return_main(int c) {
  char *x = injection_bug_wrapper_return_read(c);
  exec(x);
  return 0;
}
