int cwe415_bug_loop_free_c_main(int c) {
  char *p = calloc(4, 4);
  while (c) {
    free(p);
    c = c - 1;
  }
  return 0;
}
