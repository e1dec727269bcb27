int cwe401_bug_early_return_c_main(int c) {
  char *p = calloc(4, 4);
  if (c > 3) {
    return 1;
  }
  free(p);
  return 0;
}
