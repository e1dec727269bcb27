int cwe415_bug_first_conditional_c_main(int c) {
  char *p = calloc(4, 4);
  if (c) {
    free(p);
  }
  free(p);
  return 0;
}
