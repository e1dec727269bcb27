int cwe415_ok_fresh_each_iteration_c_main(int c) {
  while (c) {
    char *p = calloc(4, 4);
    free(p);
    c = c - 1;
  }
  return 0;
}
