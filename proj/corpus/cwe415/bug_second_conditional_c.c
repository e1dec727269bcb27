int cwe415_bug_second_conditional_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  if (c) {
    free(p);
  }
  return 0;
}
